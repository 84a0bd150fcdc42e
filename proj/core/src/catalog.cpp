#include "hsconv/catalog.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "hsconv/expression.hpp"

namespace hsconv {

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return std::islower(static_cast<unsigned char>(s.front()));
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

void require_args(const CatalogCall& call, std::size_t n) {
    if (call.args.size() != n) {
        throw DomainError("'" + call.name + "' takes " + std::to_string(n) + " argument(s), got " +
                          std::to_string(call.args.size()));
    }
}

}  // namespace

std::optional<CatalogCall> parse_catalog_call(const std::string& raw) {
    const std::string text = trim(raw);
    const auto open = text.find('(');
    if (open == std::string::npos) {
        if (!is_identifier(text)) return std::nullopt;
        return CatalogCall{text, {}};
    }
    if (text.back() != ')') return std::nullopt;
    CatalogCall call{trim(text.substr(0, open)), {}};
    if (!is_identifier(call.name)) return std::nullopt;
    std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::size_t start = 0;
    for (;;) {
        const auto comma = inner.find(',', start);
        const std::string piece =
            trim(inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        double v = 0.0;
        const auto res = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (piece.empty() || res.ec != std::errc() || res.ptr != piece.data() + piece.size()) {
            return std::nullopt;
        }
        call.args.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return call;
}

FractalFn resolve_function(const std::string& name, Alpha alpha, SParam s) {
    const auto call = parse_catalog_call(name);
    const double a = alpha.value();
    if (call) {
        const auto& n = call->name;
        const bool bare = call->args.empty();
        const Interval half_line{0.0, kInfinity};
        if (n == "square" && bare) return {"square", [](double x) { return x * x; }, alpha};
        if (n == "neg_square" && bare) return {"neg_square", [](double x) { return -x * x; }, alpha};
        if (n == "cube" && bare) return {"cube", [](double x) { return x * x * x; }, alpha};
        if (n == "exp" && bare) return {"exp", [](double x) { return std::exp(x); }, alpha};
        if (n == "linear" && bare) return {"linear", [](double x) { return x; }, alpha};
        if (n == "abs_centered" && bare) {
            return {"abs_centered", [](double x) { return std::abs(x - 0.5); }, alpha};
        }
        if (n == "x_alpha" && bare) {
            return {"x_alpha", [a](double x) { return std::pow(x, a); }, alpha, half_line};
        }
        if (n == "mittag_leffler" && bare) {
            return {"mittag_leffler", [alpha](double x) { return mittag_leffler(alpha, x); }, alpha,
                    half_line};
        }
        if (n == "power") {
            require_args(*call, 1);
            const double p = call->args[0];
            return {name, [p](double x) { return std::pow(x, p); }, alpha, half_line};
        }
        if (n == "constant") {
            require_args(*call, 1);
            const double c = call->args[0];
            return {name, [c](double) { return c; }, alpha};
        }
        if (n == "e1") {
            require_args(*call, 3);
            return example_e1(call->args[0], call->args[1], call->args[2], s, alpha).fn;
        }
    }
    const Expression e = Expression::parse(name);
    return {name, [e, a](double x) { return e(x, a); }, alpha};
}

NamedFunction resolve_named_function(const std::string& name, SParam s) {
    resolve_function(name, Alpha(1.0), s);
    return {name, [name, s](Alpha alpha) { return resolve_function(name, alpha, s); }};
}

PhiMap resolve_phi(const std::string& name) {
    const auto call = parse_catalog_call(name);
    if (call) {
        if (call->name == "identity" && call->args.empty()) return PhiMap::identity();
        if (call->name == "exp" && call->args.empty()) return PhiMap::exp();
        if (call->name == "sqrt" && call->args.empty()) return PhiMap::square_root();
        if (call->name == "affine") {
            require_args(*call, 2);
            return PhiMap::affine(call->args[0], call->args[1]);
        }
    }
    const Expression e = Expression::parse(name);
    return PhiMap::user(name, [e](double x) { return e(x); });
}

HFunction resolve_h(const std::string& name) {
    const auto call = parse_catalog_call(name);
    if (call) {
        if (call->name == "one" && call->args.empty()) return HFunction::one();
        if (call->name == "square" && call->args.empty()) return HFunction::square();
        if (call->name == "mt" && call->args.empty()) return HFunction::mt();
        if (call->name == "power") {
            require_args(*call, 1);
            return HFunction::power(call->args[0]);
        }
    }
    const Expression e = Expression::parse(name);
    return HFunction::user(name, [e](double t) { return e(t); });
}

RealFn resolve_density(const std::string& name, Interval support, Alpha alpha) {
    const auto call = parse_catalog_call(name);
    if (call) {
        if (call->name == "uniform" && call->args.empty()) return densities::uniform(support);
        if (call->name == "triangular_up" && call->args.empty()) {
            return densities::triangular_up(support);
        }
        if (call->name == "triangular_down" && call->args.empty()) {
            return densities::triangular_down(support);
        }
        if (call->name == "power") {
            require_args(*call, 1);
            return densities::power(call->args[0], support);
        }
    }
    const Expression e = Expression::parse(name);
    const double a = alpha.value();
    return [e, a](double x) { return e(x, a); };
}

}  // namespace hsconv
