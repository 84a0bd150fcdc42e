#include "hsconv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hsconv/errors.hpp"

namespace hsconv {

void QuadratureSpec::validate() const {
    if (panels < 1) throw DomainError("quadrature: panels must be >= 1");
    if (nodes_per_panel < 2) throw DomainError("quadrature: nodes_per_panel must be >= 2");
    if (!(tol > 0.0)) throw DomainError("quadrature: tol must be positive");
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

double pairwise_sum(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    std::vector<double> level = values;
    while (level.size() > 1) {
        std::vector<double> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            next.push_back(level[i] + level[i + 1]);
        }
        if (level.size() % 2 == 1) next.push_back(level.back());
        level = std::move(next);
    }
    return level.front();
}

namespace {

double sample(const std::function<double(UnitPoint)>& g, UnitPoint p) {
    const double v = g(p);
    if (!std::isfinite(v)) {
        throw EvaluationError("integrand is not finite at u=" + std::to_string(p.u), p.u);
    }
    return v;
}

// Panel [lo, hi] measured from the left end.
double left_panel(const std::function<double(UnitPoint)>& g, const GaussRule& rule, double lo,
                  double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = mid + half * rule.nodes[i];
        acc += rule.weights[i] * sample(g, {u, 1.0 - u});
    }
    return acc * half;
}

// Panel whose distance to 1 spans [dlo, dhi].
double right_panel(const std::function<double(UnitPoint)>& g, const GaussRule& rule, double dlo,
                   double dhi) {
    const double half = 0.5 * (dhi - dlo);
    const double mid = 0.5 * (dhi + dlo);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double d = mid + half * rule.nodes[i];
        acc += rule.weights[i] * sample(g, {1.0 - d, d});
    }
    return acc * half;
}

// Geometrically graded integral over the region of width `extent` adjacent
// to an endpoint. `panel(lo, hi)` integrates a sub-panel given as distances
// from that endpoint. Contributions are appended to `out`.
template <class Panel>
void graded_region(Panel&& panel, double extent, double tol, const char* side,
                   std::vector<double>& out) {
    const int depth = std::clamp(static_cast<int>(std::ceil(std::log2(extent / (tol * tol)))), 2, 200);
    std::vector<double> layers;
    layers.reserve(depth);
    double outer = extent;
    for (int k = 0; k < depth; ++k) {
        const double inner = 0.5 * outer;
        layers.push_back(panel(inner, outer));
        outer = inner;
    }
    double innermost = panel(0.0, outer);

    const double last = layers[depth - 1];
    const double prev = layers[depth - 2];
    if (last != 0.0 && prev != 0.0 && (last > 0.0) == (prev > 0.0)) {
        const double r = last / prev;
        if (r >= 0.999) {
            throw EvaluationError(std::string("integrand is not integrable at the ") + side +
                                      " endpoint (graded contributions do not decay)",
                                  side[0] == 'l' ? 0.0 : 1.0);
        }
        // Geometric tail beyond the innermost layer.
        innermost = last * r / (1.0 - r);
    }
    out.push_back(innermost);
    for (int k = depth - 1; k >= 0; --k) out.push_back(layers[k]);
}

}  // namespace

double integrate_unit(const std::function<double(UnitPoint)>& g, const QuadratureSpec& spec) {
    spec.validate();
    const GaussRule rule = gauss_legendre(spec.nodes_per_panel);
    const double width = 1.0 / spec.panels;
    const double edge = spec.panels == 1 ? 0.5 : width;

    std::vector<double> parts;
    parts.reserve(spec.panels + 256);

    graded_region([&](double lo, double hi) { return left_panel(g, rule, lo, hi); }, edge,
                  spec.tol, "left", parts);
    for (int i = 1; i + 1 < spec.panels; ++i) {
        parts.push_back(left_panel(g, rule, i * width, (i + 1) * width));
    }
    std::vector<double> right;
    graded_region([&](double lo, double hi) { return right_panel(g, rule, lo, hi); }, edge,
                  spec.tol, "right", right);
    parts.insert(parts.end(), right.rbegin(), right.rend());
    return pairwise_sum(parts);
}

}  // namespace hsconv
