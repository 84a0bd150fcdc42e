#include "hsconv/probability.hpp"

#include <algorithm>
#include <cmath>

namespace hsconv {

namespace densities {

namespace {
void require_proper(Interval support) {
    if (!(support.lo < support.hi) || !std::isfinite(support.lo) || !std::isfinite(support.hi)) {
        throw DomainError("density support must be a finite interval with lo < hi");
    }
}
}  // namespace

RealFn uniform(Interval support) {
    require_proper(support);
    const double height = 1.0 / support.length();
    return [height](double) { return height; };
}

RealFn triangular_up(Interval support) {
    require_proper(support);
    const double w = support.length();
    return [lo = support.lo, w](double x) { return 2.0 * (x - lo) / (w * w); };
}

RealFn triangular_down(Interval support) {
    require_proper(support);
    const double w = support.length();
    return [hi = support.hi, w](double x) { return 2.0 * (hi - x) / (w * w); };
}

RealFn power(double p, Interval support) {
    require_proper(support);
    if (!(p > -1.0)) throw DomainError("power density needs p > -1");
    const double w = support.length();
    const double c = (p + 1.0) / std::pow(w, p + 1.0);
    return [lo = support.lo, p, c](double x) { return c * std::pow(x - lo, p); };
}

}  // namespace densities

DistributionSpec make_distribution(std::string id, RealFn density, Interval support, Alpha alpha,
                                   Backend backend, const QuadratureSpec& quad,
                                   bool auto_rescale) {
    if (!(support.lo < support.hi) || !std::isfinite(support.lo) || !std::isfinite(support.hi)) {
        throw DomainError("distribution support must be a finite interval with lo < hi");
    }
    for (double x : linspace(support.lo, support.hi, 101)) {
        const double v = density(x);
        if (std::isnan(v) || v < 0.0) {
            throw DomainError("density '" + id + "' is negative at x=" + format_real(x));
        }
    }

    DistributionSpec d;
    d.id = std::move(id);
    d.support = support;
    d.alpha = alpha;
    d.backend = backend;
    d.raw_mass = lf_integral(density, support.lo, support.hi, alpha, backend, quad);
    d.normalized = std::abs(d.raw_mass - 1.0) <= 1e-6;

    if (d.normalized || !auto_rescale) {
        d.density = std::move(density);
        if (!d.normalized) {
            d.note = "fractional mass " + format_real(d.raw_mass) + " under " +
                     std::string(to_string(backend)) + "; rescale the density by " +
                     format_real(1.0 / d.raw_mass);
        }
        return d;
    }
    if (!(d.raw_mass > 0.0) || !std::isfinite(d.raw_mass)) {
        throw DomainError("density '" + d.id + "' has no positive finite mass to rescale");
    }
    d.scale = 1.0 / d.raw_mass;
    d.density = [raw = std::move(density), k = d.scale](double x) { return k * raw(x); };
    d.normalized = true;
    d.note = "rescaled by " + format_real(d.scale) + " under " + std::string(to_string(backend));
    return d;
}

CdfValue cdf_alpha(const DistributionSpec& dist, double x, Backend backend,
                   const QuadratureSpec& quad) {
    const double lo = dist.support.lo;
    const double hi = dist.support.hi;
    if (x <= lo) {
        return {0.0, x < lo ? "x=" + format_real(x) + " below support; clamped to 0" : ""};
    }
    std::string note;
    if (x > hi) {
        note = "x=" + format_real(x) + " above support; clamped to F(t2)";
        x = hi;
    }
    return {lf_integral(dist.density, lo, x, dist.alpha, backend, quad), note};
}

double e_functional(const DistributionSpec& dist, const RealFn& weight, Backend backend,
                    const QuadratureSpec& quad) {
    return lf_integral(
        [&](double x) {
            const double w = weight(x);
            if (!std::isfinite(w)) throw EvaluationError("weight is not finite", x);
            return w * dist.density(x);
        },
        dist.support.lo, dist.support.hi, dist.alpha, backend, quad);
}

double expectation_identity_residual(const DistributionSpec& dist, Backend backend,
                                     const QuadratureSpec& quad) {
    const double alpha = dist.alpha.value();
    const double expectation =
        e_functional(dist, [alpha](double x) { return std::pow(x, alpha); }, backend, quad);
    const double cdf_mass = lf_integral(
        [&](double x) { return cdf_alpha(dist, x, backend, quad).value; }, dist.support.lo,
        dist.support.hi, dist.alpha, backend, quad);
    return expectation - (std::pow(dist.support.hi, alpha) - cdf_mass);
}

ChainReport prob_theorem_bounds(const DistributionSpec& dist, const PhiMap& phi, double a,
                                double b, SParam s, Backend backend, const QuadratureSpec& quad) {
    const double pa = phi(a);
    const double pb = phi(b);
    if (!(pa < pb)) throw DomainError("prob_theorem_bounds: need phi(a) < phi(b)");
    if (!dist.support.contains(pa) || !dist.support.contains(pb)) {
        throw DomainError("prob_theorem_bounds: [phi(a), phi(b)] must lie inside the support");
    }
    const double alpha = dist.alpha.value();
    const double sv = s.value();

    ChainReport report;
    report.chain_id = "prob";
    report.backend = backend;
    report.params = {{"density", dist.id},
                     {"phi", phi.id()},
                     {"a", format_real(a)},
                     {"b", format_real(b)},
                     {"s", format_real(sv)},
                     {"alpha", format_real(alpha)},
                     {"support", format_real(dist.support.lo) + "," + format_real(dist.support.hi)},
                     {"scale", format_real(dist.scale)},
                     {"backend", std::string(to_string(backend))}};
    if (!dist.note.empty()) report.notes.push_back(dist.note);

    const double g1 = gamma(1.0 + alpha);
    const double mid_cdf = cdf_alpha(dist, 0.5 * (pa + pb), backend, quad).value;
    const double expectation =
        e_functional(dist, [alpha](double x) { return std::pow(x, alpha); }, backend, quad);
    const double left = std::pow(2.0, alpha * (sv - 1.0)) / g1 * mid_cdf;
    const double middle = (std::pow(pb, alpha) - expectation) / (std::pow(pb - pa, alpha) * g1);
    const double right = gamma(1.0 + alpha * sv) / gamma(1.0 + alpha * (sv + 1.0)) *
                         (cdf_alpha(dist, pa, backend, quad).value +
                          cdf_alpha(dist, pb, backend, quad).value);

    report.params["E_alpha"] = format_real(expectation);
    report.links.push_back(make_link("scaled P(X <= mid) <= (pb^alpha - E)/norm", left, middle));
    report.links.push_back(make_link("(pb^alpha - E)/norm <= scaled P(X <= pa) + P(X <= pb)",
                                     middle, right));

    const FractalFn f(dist.id, dist.density, dist.alpha, dist.support);
    const RhoSpec spec{HFunction::one(), s, dist.alpha};
    const ConvexityVerdict verdict = certify(f, phi, spec, Interval{a, b});
    report.notes.push_back("density convexity with h=1 on [a,b]: " +
                           std::string(to_string(verdict.status)));
    if (verdict.status != VerdictStatus::CertifiedOnGrid) {
        for (auto& l : report.links) l.note = "hypothesis-unverified";
    }

    double peak = 0.0;
    for (double x : linspace(dist.support.lo, dist.support.hi, 101)) {
        peak = std::max(peak, dist.density(x));
    }
    report.notes.push_back(std::string("density range within [0,1]: ") +
                           (peak <= 1.0 + 1e-12 ? "yes" : "no (max " + format_real(peak) + ")"));
    return report;
}

}  // namespace hsconv
