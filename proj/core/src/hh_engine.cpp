#include "hsconv/hh_engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hsconv {

std::map<std::string, std::string> ChainProblem::echo() const {
    return {{"f", f.id()},
            {"phi", phi.id()},
            {"h", rho.h.id()},
            {"s", format_real(rho.s.value())},
            {"alpha", format_real(rho.alpha.value())},
            {"a", format_real(a)},
            {"b", format_real(b)},
            {"backend", std::string(to_string(backend))},
            {"panels", std::to_string(quad.panels)},
            {"nodes_per_panel", std::to_string(quad.nodes_per_panel)},
            {"tol", format_real(quad.tol)}};
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Ends {
    double pa;
    double pb;
};

Ends ends(const ChainProblem& p) { return {p.phi(p.a), p.phi(p.b)}; }

// J f / (hi - lo)^alpha over the interval between x and y.
double normalized_integral(const ChainProblem& p, double x, double y) {
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    const double alpha = p.alpha().value();
    return lf_integral(p.f, lo, hi, p.alpha(), p.backend, p.quad) / std::pow(hi - lo, alpha);
}

// Runs `fn`, turning library errors into NaN and a note on the report.
template <class F>
double guarded(ChainReport& report, const char* what, F&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        report.notes.push_back(std::string(what) + " could not be evaluated: " + e.what());
        return kNaN;
    }
}

ChainReport start_report(const ChainProblem& p, std::string chain_id) {
    ChainReport report;
    report.chain_id = std::move(chain_id);
    report.backend = p.backend;
    report.params = p.echo();
    return report;
}

// X[u,v,varrho]; varrho may exceed 1, in which case rho(2 varrho) relies on
// the extension of h past the unit interval.
double x_value(const ChainProblem& p, const Ends& e, double u, double v, double varrho) {
    const double fa = p.f(e.pa);
    const double fb = p.f(e.pb);
    const double fm = p.f(0.5 * (e.pa + e.pb));
    const double gap = 0.5 * (fa + fb) - fm;
    const double w = rho_extended(p.rho, 2.0 * varrho);
    // An affine f has no gap; keep 0 * inf from poisoning the value.
    const double penalty = gap == 0.0 ? 0.0 : w * gap;
    return rho(p.rho, u) * fa + rho(p.rho, v) * fb - penalty;
}

void require_linear_multiplicative(const RhoSpec& spec) {
    for (double t : linspace(0.0, 1.0, 101)) {
        if (!(std::abs(rho_s(spec, t) - t) <= 1e-12)) {
            throw HypothesisError(
                "refined bounds need rho_s linear and multiplicative (rho_s(t) = t); fails at t=" +
                format_real(t));
        }
    }
}

}  // namespace

// --- Hermite-Hadamard chain ---------------------------------------------------

ChainReport hh_chain(const ChainProblem& p) {
    const auto e = ends(p);
    if (e.pa == e.pb) throw DomainError("hh_chain: phi(a) and phi(b) must differ");
    const double half = rho(p.rho, 0.5);
    if (half == 0.0) throw DomainError("hh_chain: rho(1/2) = 0");

    ChainReport report = start_report(p, "hh");
    const double alpha = p.alpha().value();
    const double fa = guarded(report, "f(phi(a))", [&] { return p.f(e.pa); });
    const double fb = guarded(report, "f(phi(b))", [&] { return p.f(e.pb); });
    const double fm = guarded(report, "f(mid)", [&] { return p.f(0.5 * (e.pa + e.pb)); });

    const double midpoint = fm / (std::pow(2.0, alpha) * gamma(1.0 + alpha) * half);
    const double mean = guarded(report, "normalized integral",
                                [&] { return normalized_integral(p, e.pa, e.pb); });
    const double weight = guarded(report, "0_J_1 rho",
                                  [&] { return unit_rho_integral(p.rho, p.backend, p.quad); });

    report.params["J_rho"] = format_real(weight);
    report.links.push_back(make_link("midpoint <= mean", midpoint, mean));
    report.links.push_back(make_link("mean <= endpoints", mean, (fa + fb) * weight));
    return report;
}

std::string_view to_string(CorollaryKind kind) {
    switch (kind) {
        case CorollaryKind::BrecknerSecond: return "breckner_second";
        case CorollaryKind::GeneralisedConvex: return "generalised_convex";
        case CorollaryKind::PFunction: return "p_function";
    }
    return "unknown";
}

CorollaryKind corollary_kind_from_string(std::string_view name) {
    if (name == "breckner_second") return CorollaryKind::BrecknerSecond;
    if (name == "generalised_convex") return CorollaryKind::GeneralisedConvex;
    if (name == "p_function") return CorollaryKind::PFunction;
    throw DomainError("unknown corollary '" + std::string(name) + "'");
}

ChainReport corollary_bounds(CorollaryKind kind, const FractalFn& f, double a, double b,
                             Alpha alpha, SParam s, Backend backend, const QuadratureSpec& quad) {
    if (!(a < b)) throw DomainError("corollary_bounds: need a < b");
    const double al = alpha.value();
    const double g1 = gamma(1.0 + al);

    ChainReport report;
    report.chain_id = "corollary:" + std::string(to_string(kind));
    report.backend = backend;
    report.params = {{"f", f.id()},
                     {"a", format_real(a)},
                     {"b", format_real(b)},
                     {"alpha", format_real(al)},
                     {"s", format_real(s.value())},
                     {"backend", std::string(to_string(backend))}};

    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double mean = guarded(report, "normalized integral", [&] {
        return lf_integral(f, a, b, alpha, backend, quad) / std::pow(b - a, al);
    });

    switch (kind) {
        case CorollaryKind::BrecknerSecond:
            report.links.push_back(make_link("2^((s-1)alpha) f(mid) <= Gamma(1+alpha) mean",
                                             std::pow(2.0, (s.value() - 1.0) * al) * fm,
                                             g1 * mean));
            break;
        case CorollaryKind::GeneralisedConvex:
            report.links.push_back(make_link("f(mid)/Gamma(1+alpha) <= mean", fm / g1, mean));
            report.links.push_back(make_link("mean <= Gamma(1+alpha)/Gamma(1+2alpha) (f(a)+f(b))",
                                             mean, g1 / gamma(1.0 + 2.0 * al) * (fa + fb)));
            break;
        case CorollaryKind::PFunction:
            report.links.push_back(make_link("2^-alpha/Gamma(1+alpha) f(mid) <= mean",
                                             std::pow(2.0, -al) / g1 * fm, mean));
            report.links.push_back(
                make_link("mean <= (f(a)+f(b))/Gamma(1+alpha)", mean, (fa + fb) / g1));
            break;
    }
    return report;
}

// --- splitting identity -------------------------------------------------------

double lemma_split_residual(const ChainProblem& p, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("lemma_split_residual: lambda must lie in [0,1]");
    }
    for (double x : linspace(std::min(p.a, p.b), std::max(p.a, p.b), 21)) {
        if (!(p.phi(x) > 0.0)) {
            throw DomainError("lemma_split_residual: phi must be positive on [a,b]; phi(" +
                              format_real(x) + ") = " + format_real(p.phi(x)));
        }
    }
    const auto e = ends(p);
    const Alpha alpha = p.alpha();
    const double m = (1.0 - lambda) * e.pa + lambda * e.pb;

    auto unit = [&](double from, double to) {
        return lf_integral([&](double t) { return p.f((1.0 - t) * from + t * to); }, 0.0, 1.0,
                           alpha, p.backend, p.quad);
    };
    const double whole = unit(e.pa, e.pb);
    const double w_right = std::pow(1.0 - lambda, alpha.value());
    const double w_left = std::pow(lambda, alpha.value());
    const double right = w_right == 0.0 ? 0.0 : w_right * unit(m, e.pb);
    const double left = w_left == 0.0 ? 0.0 : w_left * unit(e.pa, m);
    return whole - (right + left);
}

// --- lambda refinement --------------------------------------------------------

ChainReport refined_chain_lambda(const ChainProblem& p, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("refined_chain_lambda: lambda must lie in [0,1]");
    }
    const auto e = ends(p);
    if (!(e.pa < e.pb)) throw DomainError("refined_chain_lambda: need phi(a) < phi(b)");

    ChainReport report = start_report(p, "refined");
    report.params["lambda"] = format_real(lambda);
    report.notes.push_back(
        "the three-point term is built from the split-interval estimates, not from a closed "
        "single-expression form");

    const double alpha = p.alpha().value();
    bool hypothesis = true;
    for (double t : linspace(0.0, 1.0, 101)) {
        if (!(rho(p.rho, t) <= std::pow(t, alpha) + 1e-12)) hypothesis = false;
    }

    const double g1 = gamma(1.0 + alpha);
    const double fa = p.f(e.pa);
    const double fb = p.f(e.pb);
    const double t0 = p.f(0.5 * (e.pa + e.pb)) / g1;
    const double t1 =
        (rho(p.rho, 1.0 - lambda) * p.f(0.5 * ((1.0 - lambda) * e.pa + (1.0 + lambda) * e.pb)) +
         rho(p.rho, lambda) * p.f(0.5 * ((2.0 - lambda) * e.pa + lambda * e.pb))) /
        g1;
    const double t2 = guarded(report, "normalized integral",
                              [&] { return normalized_integral(p, e.pa, e.pb); });
    const double weight = guarded(report, "0_J_1 rho",
                                  [&] { return unit_rho_integral(p.rho, p.backend, p.quad); });
    const double t3 = (p.f((1.0 - lambda) * e.pa + lambda * e.pb) +
                       std::pow(lambda, alpha) * fa + std::pow(1.0 - lambda, alpha) * fb) *
                      weight;
    const double t4 = (fa + fb) * weight;

    report.params["J_rho"] = format_real(weight);
    report.links.push_back(make_link("midpoint <= weighted midpoints", t0, t1));
    report.links.push_back(make_link("weighted midpoints <= mean", t1, t2));
    report.links.push_back(make_link("mean <= three-point bound", t2, t3));
    report.links.push_back(make_link("three-point bound <= endpoints", t3, t4));
    if (!hypothesis) {
        report.mark_indeterminate("hypothesis rho(t) <= t^alpha fails on the sampled t-grid");
    }
    return report;
}

// --- X-functional bounds ------------------------------------------------------

double x_functional(const ChainProblem& p, XFunctionalParams params) {
    for (double v : {params.u, params.v, params.varrho}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw DomainError("x_functional: u, v and varrho must lie in [0,1]");
        }
    }
    return x_value(p, ends(p), params.u, params.v, params.varrho);
}

ChainReport k9_pointwise_bounds(const ChainProblem& p, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("k9_pointwise_bounds: t must lie in [0,1]");
    require_linear_multiplicative(p.rho);
    const auto e = ends(p);
    const double c = std::min(t, 1.0 - t);
    const double big_c = std::max(t, 1.0 - t);

    ChainReport report = start_report(p, "k9-point");
    report.params["t"] = format_real(t);
    const double value = p.f((1.0 - t) * e.pa + t * e.pb);
    report.links.push_back(
        make_link("X[1-t,t,C] <= f", x_value(p, e, 1.0 - t, t, big_c), value));
    report.links.push_back(make_link("f <= X[1-t,t,c]", value, x_value(p, e, 1.0 - t, t, c)));
    return report;
}

ChainReport k9_reflection_bounds(const ChainProblem& p, double x) {
    require_linear_multiplicative(p.rho);
    const auto e = ends(p);
    if (!(e.pa < e.pb)) throw DomainError("k9_reflection_bounds: need phi(a) < phi(b)");
    const double px = p.phi(x);
    if (!(px >= e.pa && px <= e.pb)) {
        throw DomainError("k9_reflection_bounds: phi(x) must lie in [phi(a), phi(b)]");
    }
    const double span = e.pb - e.pa;
    const double c = std::min((e.pb - px) / span, (px - e.pa) / span);
    const double big_c = std::max((e.pb - px) / span, (px - e.pa) / span);

    ChainReport report = start_report(p, "k9-reflect");
    report.params["x"] = format_real(x);
    const double fx = p.f(px);
    const double value = p.f(e.pa + e.pb - px);
    report.links.push_back(
        make_link("X[1,1,2C] - f(x) <= f(reflected)", x_value(p, e, 1.0, 1.0, 2.0 * big_c) - fx, value));
    report.links.push_back(
        make_link("f(reflected) <= X[1,1,2c] - f(x)", value, x_value(p, e, 1.0, 1.0, 2.0 * c) - fx));
    return report;
}

ChainReport k9_integral_chain(const ChainProblem& p, double u, double v) {
    if (u == v) throw DomainError("k9_integral_chain: u and v must differ");
    require_linear_multiplicative(p.rho);
    const double lo = std::min(p.a, p.b);
    const double hi = std::max(p.a, p.b);
    if (!(u >= lo && u <= hi && v >= lo && v <= hi)) {
        throw DomainError("k9_integral_chain: u and v must lie in [a,b]");
    }
    const auto e = ends(p);
    const double pu = p.phi(u);
    const double pv = p.phi(v);
    if (pu == pv) throw DomainError("k9_integral_chain: phi(u) and phi(v) must differ");

    ChainReport report = start_report(p, "k9-integral");
    report.params["u"] = format_real(u);
    report.params["v"] = format_real(v);

    const double center =
        p.f(e.pa + e.pb - 0.5 * (pu + pv)) +
        guarded(report, "normalized integral", [&] { return normalized_integral(p, pu, pv); });
    // C1 + C2 = max(t, 1-t), c1 + c2 = min(t, 1-t).
    const double lower = guarded(report, "lower X integral", [&] {
        return lf_integral(
            [&](double t) { return x_value(p, e, 1.0, 1.0, 2.0 * std::max(t, 1.0 - t)); }, 0.0,
            1.0, p.alpha(), p.backend, p.quad);
    });
    const double upper = guarded(report, "upper X integral", [&] {
        return lf_integral(
            [&](double t) { return x_value(p, e, 1.0, 1.0, 2.0 * std::min(t, 1.0 - t)); }, 0.0,
            1.0, p.alpha(), p.backend, p.quad);
    });
    report.links.push_back(make_link("J X[1,1,2C1+2C2] <= center", lower, center));
    report.links.push_back(make_link("center <= J X[1,1,2c1+2c2]", center, upper));
    return report;
}

// --- violation search ---------------------------------------------------------

std::string_view to_string(ChainKind kind) {
    switch (kind) {
        case ChainKind::Hh: return "hh";
        case ChainKind::Refined: return "refined";
        case ChainKind::K9Point: return "k9-point";
        case ChainKind::K9Reflect: return "k9-reflect";
        case ChainKind::K9Integral: return "k9-integral";
        case ChainKind::Lemma: return "lemma";
    }
    return "unknown";
}

ChainKind chain_kind_from_string(std::string_view name) {
    if (name == "hh") return ChainKind::Hh;
    if (name == "refined") return ChainKind::Refined;
    if (name == "k9-point") return ChainKind::K9Point;
    if (name == "k9-reflect") return ChainKind::K9Reflect;
    if (name == "k9-integral") return ChainKind::K9Integral;
    if (name == "lemma") return ChainKind::Lemma;
    throw DomainError("unknown chain '" + std::string(name) +
                      "' (expected hh, refined, k9-point, k9-reflect, k9-integral or lemma)");
}

namespace {

std::size_t param_count(ChainKind chain, const ScenarioSpace& space) {
    if (chain == ChainKind::K9Integral) return std::max<std::size_t>(1, space.uv_pairs.size());
    if (chain == ChainKind::Hh) return 1;
    return std::max<std::size_t>(1, space.chain_params.size());
}

struct Decoded {
    std::size_t function, phi, h, s, alpha, interval, param;
};

Decoded decode(std::size_t index, ChainKind chain, const ScenarioSpace& space) {
    Decoded d{};
    auto take = [&index](std::size_t radix) {
        const std::size_t digit = index % radix;
        index /= radix;
        return digit;
    };
    d.param = take(param_count(chain, space));
    d.interval = take(space.intervals.size());
    d.alpha = take(space.alphas.size());
    d.s = take(space.s_values.size());
    d.h = take(space.hs.size());
    d.phi = take(space.phis.size());
    d.function = take(space.functions.size());
    return d;
}

struct Evaluated {
    ChainReport report;
    std::map<std::string, std::string> scenario;
};

Evaluated evaluate(std::size_t index, ChainKind chain, const ScenarioSpace& space) {
    const Decoded d = decode(index, chain, space);
    const Alpha alpha(space.alphas[d.alpha]);
    const Interval iv = space.intervals[d.interval];
    ChainProblem p{space.functions[d.function].make(alpha),
                   space.phis[d.phi],
                   RhoSpec{space.hs[d.h], SParam(space.s_values[d.s]), alpha},
                   iv.lo,
                   iv.hi,
                   space.backend,
                   space.quad};

    std::map<std::string, std::string> scenario = p.echo();
    scenario["function"] = space.functions[d.function].name;
    scenario["chain"] = std::string(to_string(chain));

    auto param_or = [&](double fallback) {
        return space.chain_params.empty() ? fallback : space.chain_params[d.param];
    };

    ChainReport report;
    switch (chain) {
        case ChainKind::Hh:
            report = hh_chain(p);
            break;
        case ChainKind::Refined: {
            const double lambda = param_or(0.5);
            scenario["lambda"] = format_real(lambda);
            report = refined_chain_lambda(p, lambda);
            break;
        }
        case ChainKind::K9Point: {
            const double t = param_or(0.25);
            scenario["t"] = format_real(t);
            report = k9_pointwise_bounds(p, t);
            break;
        }
        case ChainKind::K9Reflect: {
            const double x = param_or(iv.lo + 0.25 * iv.length());
            scenario["x"] = format_real(x);
            report = k9_reflection_bounds(p, x);
            break;
        }
        case ChainKind::K9Integral: {
            const auto uv = space.uv_pairs.empty() ? std::pair{iv.lo, iv.hi}
                                                   : space.uv_pairs[d.param];
            scenario["u"] = format_real(uv.first);
            scenario["v"] = format_real(uv.second);
            report = k9_integral_chain(p, uv.first, uv.second);
            break;
        }
        case ChainKind::Lemma: {
            const double lambda = param_or(0.5);
            scenario["lambda"] = format_real(lambda);
            const double residual = lemma_split_residual(p, lambda);
            report = start_report(p, "lemma");
            report.params["lambda"] = format_real(lambda);
            report.params["residual"] = format_real(residual);
            report.links.push_back(make_link("|residual| <= threshold", std::abs(residual),
                                             space.residual_threshold));
            break;
        }
    }
    return {std::move(report), std::move(scenario)};
}

double failing_margin(const ChainReport& r, std::string& label) {
    double worst = kInfinity;
    for (const auto& l : r.links) {
        if (l.status == LinkStatus::Fail && l.margin < worst) {
            worst = l.margin;
            label = l.label;
        }
    }
    return worst;
}

}  // namespace

std::size_t ScenarioSpace::size() const {
    return functions.size() * phis.size() * hs.size() * s_values.size() * alphas.size() *
           intervals.size();
}

SearchOutcome violation_search(ChainKind chain, const ScenarioSpace& space,
                               const SearchStrategy& strategy) {
    SearchOutcome out;
    const std::size_t total = space.size() * param_count(chain, space);
    if (total == 0) return out;

    auto consider = [&](std::size_t index, std::optional<WitnessCertificate>& best) {
        ++out.evaluated;
        Evaluated ev;
        try {
            ev = evaluate(index, chain, space);
        } catch (const Error&) {
            ++out.errors;
            return false;
        }
        std::string label;
        const double margin = failing_margin(ev.report, label);
        if (std::isinf(margin)) return false;
        const bool better = !best || margin < best->margin ||
                            (margin == best->margin && index < best->scenario_index);
        if (better) {
            best = WitnessCertificate{index, std::move(ev.scenario), std::move(ev.report), label,
                                      margin};
        }
        return true;
    };

    if (strategy.kind == SearchStrategy::Kind::Grid) {
        for (std::size_t i = 0; i < total; ++i) {
            if (consider(i, out.witness)) break;
        }
        return out;
    }

    std::mt19937_64 rng(strategy.seed);
    for (std::size_t n = 0; n < strategy.samples; ++n) {
        consider(static_cast<std::size_t>(rng() % total), out.witness);
    }
    return out;
}

}  // namespace hsconv
