#include "hsconv/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace hsconv {

// --- PhiMap -----------------------------------------------------------------

PhiMap::PhiMap(std::string id, RealFn fn, bool identity)
    : id_(std::move(id)), fn_(std::move(fn)), identity_(identity) {
    if (!fn_) throw DomainError("PhiMap '" + id_ + "' requires a callable");
}

PhiMap PhiMap::identity() { return {"identity", [](double x) { return x; }, true}; }

PhiMap PhiMap::affine(double p, double q) {
    return {"affine(" + format_real(p) + "," + format_real(q) + ")",
            [p, q](double x) { return p * x + q; }, p == 1.0 && q == 0.0};
}

PhiMap PhiMap::exp() { return {"exp", [](double x) { return std::exp(x); }, false}; }

PhiMap PhiMap::square_root() {
    return {"square_root", [](double x) { return std::sqrt(x); }, false};
}

PhiMap PhiMap::user(std::string id, RealFn fn) { return {std::move(id), std::move(fn), false}; }

double PhiMap::operator()(double x) const {
    const double y = fn_(x);
    if (!std::isfinite(y)) {
        throw EvaluationError("phi '" + id_ + "' is not finite at x=" + std::to_string(x), x);
    }
    return y;
}

// --- grid -------------------------------------------------------------------

void GridSpec::validate() const {
    if (nx < 3 || ny < 3 || nt < 3) {
        throw DomainError("grid needs at least 3 points per axis");
    }
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw DomainError("linspace needs at least 2 points");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
    out.back() = hi;
    return out;
}

std::string_view to_string(VerdictStatus status) {
    switch (status) {
        case VerdictStatus::CertifiedOnGrid: return "certified_on_grid";
        case VerdictStatus::Violated: return "violated";
        case VerdictStatus::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

VerdictStatus verdict_status_from_string(std::string_view name) {
    if (name == "certified_on_grid") return VerdictStatus::CertifiedOnGrid;
    if (name == "violated") return VerdictStatus::Violated;
    if (name == "indeterminate") return VerdictStatus::Indeterminate;
    throw DomainError("unknown verdict status '" + std::string(name) + "'");
}

// --- certify ----------------------------------------------------------------

namespace {

struct Sampled {
    bool ok = false;
    double value = 0.0;
};

template <class F>
Sampled try_eval(F&& fn, std::optional<double>& failed_at, double where) {
    try {
        const double v = fn();
        if (std::isfinite(v)) return {true, v};
    } catch (const Error&) {
    }
    if (!failed_at) failed_at = where;
    return {};
}

double weighted(double weight, double value) {
    // An infinite weight makes the right side unbounded; treated as satisfied.
    if (std::isinf(weight)) return kInfinity;
    return weight * value;
}

}  // namespace

ConvexityVerdict certify(const FractalFn& f, const PhiMap& phi, const RhoSpec& spec,
                         Interval interval, const GridSpec& grid) {
    grid.validate();
    if (!(interval.lo < interval.hi)) {
        throw DomainError("certify: interval must satisfy lo < hi");
    }
    const auto xs = linspace(interval.lo, interval.hi, grid.nx);
    const auto ys = linspace(interval.lo, interval.hi, grid.ny);
    const auto ts = linspace(0.0, 1.0, grid.nt);

    ConvexityVerdict verdict;
    std::optional<double>& failed = verdict.failed_point;

    auto sample_axis = [&](const std::vector<double>& pts, std::vector<Sampled>& phis,
                           std::vector<Sampled>& vals) {
        phis.resize(pts.size());
        vals.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            phis[i] = try_eval([&] { return phi(pts[i]); }, failed, pts[i]);
            if (phis[i].ok) {
                vals[i] = try_eval([&] { return f(phis[i].value); }, failed, phis[i].value);
            }
        }
    };
    std::vector<Sampled> phi_x, f_x, phi_y, f_y;
    sample_axis(xs, phi_x, f_x);
    sample_axis(ys, phi_y, f_y);

    std::vector<double> w_t(ts.size()), w_1mt(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        w_t[k] = rho(spec, ts[k]);
        w_1mt[k] = rho(spec, 1.0 - ts[k]);
    }

    struct Cell {
        bool ok = false;
        double lhs = 0.0;
        double rhs = 0.0;
    };
    std::vector<Cell> cells(xs.size() * ys.size() * ts.size());
    double max_abs = 0.0;
    for (const auto& s : f_x) if (s.ok) max_abs = std::max(max_abs, std::abs(s.value));
    for (const auto& s : f_y) if (s.ok) max_abs = std::max(max_abs, std::abs(s.value));

    std::size_t idx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) {
            for (std::size_t k = 0; k < ts.size(); ++k, ++idx) {
                if (!(phi_x[i].ok && phi_y[j].ok && f_x[i].ok && f_y[j].ok)) continue;
                const double t = ts[k];
                const double z = t * phi_x[i].value + (1.0 - t) * phi_y[j].value;
                const Sampled lhs = try_eval([&] { return f(z); }, failed, z);
                if (!lhs.ok) continue;
                max_abs = std::max(max_abs, std::abs(lhs.value));
                const double rhs =
                    weighted(w_t[k], f_x[i].value) + weighted(w_1mt[k], f_y[j].value);
                cells[idx] = {true, lhs.value, rhs};
            }
        }
    }

    verdict.tol_abs = 1e-9 * (1.0 + max_abs);
    double min_slack = kInfinity;
    double worst = 0.0;
    idx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) {
            for (std::size_t k = 0; k < ts.size(); ++k, ++idx) {
                const Cell& c = cells[idx];
                if (!c.ok) continue;
                const double slack = c.rhs - c.lhs;
                min_slack = std::min(min_slack, slack);
                const double excess = c.lhs - c.rhs;
                if (excess > verdict.tol_abs && excess > worst) {
                    worst = excess;
                    verdict.witness = WitnessTriple{xs[i], ys[j], ts[k], c.lhs, c.rhs};
                }
            }
        }
    }
    verdict.margin = min_slack;

    if (verdict.witness) {
        verdict.status = VerdictStatus::Violated;
    } else if (failed) {
        verdict.status = VerdictStatus::Indeterminate;
        verdict.note = "f or phi could not be evaluated at " + format_real(*failed);
    } else {
        verdict.status = VerdictStatus::CertifiedOnGrid;
    }
    return verdict;
}

ConvexityVerdict certify_product(const FractalFn& f, const HFunction& h1, const FractalFn& g,
                                 const HFunction& h2, double c, const PhiMap& phi, SParam s,
                                 Interval interval, const GridSpec& grid) {
    if (!(c > 0.0)) throw DomainError("certify_product: c must be positive");
    auto h = HFunction::user(
        "c*max(" + h1.id() + "," + h2.id() + ")",
        [h1, h2, c](double t) { return c * std::max(h1(t), h2(t)); },
        h1.extends_past_one() && h2.extends_past_one());

    bool side_condition = true;
    for (double t : linspace(0.0, 1.0, 101)) {
        const double m1 = std::max(h1(t), h2(t));
        const double m2 = std::max(h1(1.0 - t), h2(1.0 - t));
        if (m1 + m2 > c * (1.0 + 1e-12)) side_condition = false;
    }

    const RhoSpec spec{h, s, f.alpha()};
    ConvexityVerdict v = certify(product(f, g), phi, spec, interval, grid);
    const std::string side = side_condition ? "h(t)+h(1-t) <= c holds on the sampled grid"
                                            : "h(t)+h(1-t) <= c fails on the sampled grid";
    v.note = v.note.empty() ? side : v.note + "; " + side;
    return v;
}

// --- classify ---------------------------------------------------------------

std::string_view to_string(ConvexityClass c) {
    switch (c) {
        case ConvexityClass::PFunction: return "P_function";
        case ConvexityClass::GeneralisedConvex: return "generalised_convex";
        case ConvexityClass::BrecknerFirst: return "breckner_first";
        case ConvexityClass::BrecknerSecond: return "breckner_second";
        case ConvexityClass::HTildeConvex: return "h_tilde_convex";
        case ConvexityClass::GodunovaLevinS: return "godunova_levin_s";
        case ConvexityClass::MtSConvex: return "mt_s_convex";
        case ConvexityClass::MtConvex: return "mt_convex";
    }
    return "none";
}

namespace {

bool is_unit_h(const HFunction& h) {
    return h.kind() == HFunction::Kind::One ||
           (h.kind() == HFunction::Kind::Power && h.param() == 0.0);
}

}  // namespace

std::vector<ClassTag> classify(const RhoSpec& spec, const PhiMap& phi) {
    std::vector<ClassTag> tags;
    if (!phi.is_identity()) return tags;
    const double s = spec.s.value();
    const bool unit_h = is_unit_h(spec.h);
    const bool interior_s = s > 0.0 && s < 1.0;

    if (s == 0.0) tags.push_back({ConvexityClass::PFunction});
    if (unit_h && s == 1.0) tags.push_back({ConvexityClass::GeneralisedConvex});
    if (unit_h && interior_s) {
        tags.push_back({ConvexityClass::BrecknerFirst, true});
        tags.push_back({ConvexityClass::BrecknerSecond});
    }
    if (s == 1.0) tags.push_back({ConvexityClass::HTildeConvex});
    // At s = 0 the weight is identically 1 whatever h is, so only the
    // P-function reading applies.
    if (spec.h.kind() == HFunction::Kind::Square && s > 0.0) {
        tags.push_back({ConvexityClass::GodunovaLevinS});
    }
    if (spec.h.kind() == HFunction::Kind::Mt && s > 0.0) {
        tags.push_back({ConvexityClass::MtSConvex});
        if (s == 1.0) tags.push_back({ConvexityClass::MtConvex});
    }
    return tags;
}

// --- K-functional and monotonicity -----------------------------------------

double k_functional(double lambda, const RhoSpec& spec) {
    const double s = spec.s.value();
    if (s == 0.0) throw DomainError("k_functional: s must be positive (1/s is undefined)");
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("k_functional: lambda must lie in [0,1]");
    }
    return rho(spec, std::pow(lambda, 1.0 / s)) + rho(spec, std::pow(1.0 - lambda, 1.0 / s));
}

ChainReport check_t1_monotonicity(const FractalFn& f, const PhiMap& phi, const RhoSpec& spec,
                                  double lambda, Interval range, int points) {
    const double s = spec.s.value();
    if (!(s > 0.0 && s < 1.0)) {
        throw DomainError("check_t1_monotonicity: s must lie in (0,1)");
    }
    if (points < 2) throw DomainError("check_t1_monotonicity: need at least 2 points");
    if (!(range.lo < range.hi)) throw DomainError("check_t1_monotonicity: empty range");

    std::vector<double> r(points), fr(points);
    for (int i = 0; i < points; ++i) {
        const double x = range.lo + range.length() * static_cast<double>(i + 1) / points;
        r[i] = phi(x);
        if (!(r[i] > 0.0)) {
            throw DomainError("check_t1_monotonicity: phi must be positive, phi(" +
                              format_real(x) + ") = " + format_real(r[i]));
        }
        fr[i] = f(r[i]);
    }

    const double k = k_functional(lambda, spec);
    ChainReport report;
    report.chain_id = "t1";
    report.params = {{"lambda", format_real(lambda)}, {"K", format_real(k)},
                     {"s", format_real(s)},           {"alpha", format_real(spec.alpha.value())},
                     {"h", spec.h.id()},              {"phi", phi.id()},
                     {"f", f.id()},                   {"points", std::to_string(points)}};
    report.notes.push_back("f is assumed generalised phi_{h-s} convex; not re-certified here");

    // bound: f(r1) <= K f(r2) for r1 <= r2
    double worst = kInfinity;
    int wi = 0, wj = 0;
    for (int i = 0; i < points; ++i) {
        for (int j = 0; j < points; ++j) {
            if (r[i] > r[j]) continue;
            const double slack = k * fr[j] - fr[i];
            if (slack < worst) {
                worst = slack;
                wi = i;
                wj = j;
            }
        }
    }
    report.links.push_back(make_link("bound f(r1) <= K f(r2)", fr[wi], k * fr[wj],
                                     "r1=" + format_real(r[wi]) + " r2=" + format_real(r[wj])));

    if (k <= 1.0 + 1e-12) {
        std::vector<int> order(points);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return r[a] < r[b]; });
        double worst_step = kInfinity;
        int a = order[0], b = order[0];
        for (int i = 0; i + 1 < points; ++i) {
            const int p = order[i], q = order[i + 1];
            if (!(r[p] < r[q])) continue;
            const double step = fr[q] - fr[p];
            if (step < worst_step) {
                worst_step = step;
                a = p;
                b = q;
            }
        }
        report.links.push_back(make_link("nondecreasing f(r_i) <= f(r_i+1)", fr[a], fr[b],
                                         "r_i=" + format_real(r[a]) + " r_i+1=" + format_real(r[b])));
    } else {
        report.notes.push_back("K > 1: monotonicity is not implied and was not checked");
    }
    return report;
}

// --- example family ---------------------------------------------------------

E1Family example_e1(double beta, double gamma_c, double sigma, SParam s, Alpha alpha,
                    const HFunction& h) {
    const double a = alpha.value();
    const double sv = s.value();
    auto eval = [beta, gamma_c, sigma, sv, a](double x) -> double {
        const double base = x == 0.0 ? beta : gamma_c * std::pow(x, sv) + sigma;
        if (base < 0.0) {
            throw EvaluationError("e1: negative base " + format_real(base) + " at A=" +
                                      format_real(x),
                                  x);
        }
        return std::pow(base, a);
    };
    FractalFn fn("e1(" + format_real(beta) + "," + format_real(gamma_c) + "," +
                     format_real(sigma) + ")",
                 eval, alpha, {0.0, kInfinity});

    const RhoSpec spec{h, s, alpha};
    bool unity = true;
    bool lower = true;
    for (double t : linspace(0.0, 1.0, 101)) {
        const double w = rho(spec, t);
        if (!(std::abs(w + rho(spec, 1.0 - t) - 1.0) <= 1e-12)) unity = false;
        if (!(std::pow(t, a * sv) <= w + 1e-15)) lower = false;
    }
    return {std::move(fn), unity, lower};
}

}  // namespace hsconv
