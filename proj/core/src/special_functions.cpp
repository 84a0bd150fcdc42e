#include "hsconv/special_functions.hpp"

#include <cmath>
#include <utility>

namespace hsconv {

double gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("gamma: argument must be positive, got " + std::to_string(x));
    }
    const double g = std::tgamma(x);
    if (!std::isfinite(g)) {
        throw DomainError("gamma: overflow at " + std::to_string(x));
    }
    return g;
}

double mittag_leffler(Alpha alpha, double x, double tol, std::size_t max_terms) {
    if (!(tol > 0.0)) {
        throw DomainError("mittag_leffler: tol must be positive");
    }
    if (!(x >= 0.0)) {
        throw DomainError("mittag_leffler: x must be non-negative, got " + std::to_string(x));
    }
    if (x == 0.0) {
        return 1.0;
    }
    const double a = alpha.value();
    const double log_x = std::log(x);
    double sum = 1.0;
    int quiet = 0;
    for (std::size_t k = 1; k < max_terms; ++k) {
        const double ka = static_cast<double>(k) * a;
        // lgamma keeps the coefficient finite long after Gamma(1 + k alpha) overflows.
        const double term = std::exp(ka * log_x - std::lgamma(1.0 + ka));
        sum += term;
        if (term < tol * (1.0 + std::abs(sum))) {
            if (++quiet == 2) {
                return sum;
            }
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("mittag_leffler: no convergence within term cap", sum, max_terms);
}

HFunction::HFunction(Kind kind, std::string id, double param, std::function<double(double)> fn,
                     bool extends_past_one)
    : kind_(kind),
      id_(std::move(id)),
      param_(param),
      fn_(std::move(fn)),
      extends_past_one_(extends_past_one) {}

HFunction HFunction::one() {
    return {Kind::One, "one", 0.0, [](double) { return 1.0; }, true};
}

HFunction HFunction::square() {
    return {Kind::Square, "square", 0.0, [](double t) { return t * t; }, true};
}

HFunction HFunction::mt() {
    return {Kind::Mt, "mt", 0.0, [](double t) { return 2.0 * std::sqrt(t - t * t); }, false};
}

HFunction HFunction::power(double p) {
    if (!std::isfinite(p)) {
        throw DomainError("h power exponent must be finite");
    }
    return {Kind::Power, "power(" + std::to_string(p) + ")", p,
            [p](double t) { return std::pow(t, p); }, true};
}

HFunction HFunction::user(std::string id, std::function<double(double)> fn, bool extends_past_one) {
    if (!fn) {
        throw DomainError("user h requires a callable");
    }
    return {Kind::User, std::move(id), 0.0, std::move(fn), extends_past_one};
}

double HFunction::operator()(double t) const {
    if (t < 0.0 || (t > 1.0 && !extends_past_one_)) {
        throw DomainError("h '" + id_ + "' is not defined at t=" + std::to_string(t));
    }
    return fn_(t);
}

double HFunction::ratio(double t) const {
    if (t < 0.0) {
        throw DomainError("rho argument must be non-negative, got " + std::to_string(t));
    }
    if (t > 1.0 && !extends_past_one_) {
        throw DomainError("h '" + id_ + "' is declared on [0,1] only; rho at t=" + std::to_string(t) +
                          " needs an extension the expression does not provide");
    }
    switch (kind_) {
        case Kind::One:
            return t;
        case Kind::Square:
            return t == 0.0 ? kInfinity : 1.0 / t;
        case Kind::Mt:
            if (t == 0.0) return 0.0;
            if (t == 1.0) return kInfinity;
            return std::sqrt(t) / (2.0 * std::sqrt(1.0 - t));
        case Kind::Power:
            if (t == 0.0) {
                if (param_ < 1.0) return 0.0;
                if (param_ == 1.0) return 1.0;
                return kInfinity;
            }
            return std::pow(t, 1.0 - param_);
        case Kind::User:
            break;
    }

    const double h = fn_(t);
    if (std::isfinite(h) && h > 0.0) {
        return t / h;
    }
    const bool endpoint = t == 0.0 || t >= 1.0;
    if (h == 0.0 && endpoint) {
        // One-sided limit, read off just inside the interval.
        constexpr double kNudge = 1e-10;
        const double inner = t == 0.0 ? kNudge : t - kNudge;
        const double r = inner / fn_(inner);
        if (!std::isfinite(r) || r > 1e8) {
            return kInfinity;
        }
        return r;
    }
    throw DomainError("h '" + id_ + "' must be positive at t=" + std::to_string(t));
}

namespace {

double power_of_ratio(double r, double exponent) {
    if (exponent == 0.0) {
        return 1.0;
    }
    if (std::isinf(r)) {
        return kInfinity;
    }
    return std::pow(r, exponent);
}

void require_unit(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("rho: t must lie in [0,1], got " + std::to_string(t));
    }
}

}  // namespace

double rho_s(const RhoSpec& spec, double t) {
    require_unit(t);
    if (spec.s.value() == 0.0) {
        return 1.0;
    }
    return power_of_ratio(spec.h.ratio(t), spec.s.value());
}

double rho(const RhoSpec& spec, double t) {
    require_unit(t);
    if (spec.s.value() == 0.0) {
        return 1.0;
    }
    return power_of_ratio(spec.h.ratio(t), spec.alpha.value() * spec.s.value());
}

double rho_extended(const RhoSpec& spec, double t) {
    if (!(t >= 0.0) || std::isinf(t)) {
        throw DomainError("rho: t must be finite and non-negative, got " + std::to_string(t));
    }
    if (t <= 1.0) {
        return rho(spec, t);
    }
    const double r = spec.h.ratio(t);
    if (spec.s.value() == 0.0) {
        return 1.0;
    }
    return power_of_ratio(r, spec.alpha.value() * spec.s.value());
}

}  // namespace hsconv
