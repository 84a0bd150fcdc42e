#pragma once

#include <functional>
#include <vector>

namespace hsconv {

struct QuadratureSpec {
    int panels = 512;
    int nodes_per_panel = 16;
    /// Controls the depth of the endpoint grading: the innermost graded
    /// panel is no wider than tol^2.
    double tol = 1e-9;

    /// Throws DomainError unless panels >= 1, nodes_per_panel >= 2, tol > 0.
    void validate() const;

    friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule.
GaussRule gauss_legendre(int n);

/// A point of [0,1] carried together with its distance to 1, so integrands
/// can resolve the right end without cancellation.
struct UnitPoint {
    double u;
    double one_minus_u;
};

/// Integral of g over [0,1] by composite Gauss-Legendre.
///
/// The first and last of the uniform panels are refined geometrically toward
/// the endpoint, which resolves integrable power-type endpoint behaviour.
/// The tail below the innermost graded panel is extrapolated from the last
/// two layer contributions; when those contributions stop shrinking the
/// integrand is treated as non-integrable and EvaluationError is thrown.
/// Panel sums are combined by pairwise reduction, so the result is
/// bit-stable for a fixed spec.
double integrate_unit(const std::function<double(UnitPoint)>& g, const QuadratureSpec& spec);

/// Pairwise (cascade) summation.
double pairwise_sum(const std::vector<double>& values);

}  // namespace hsconv
