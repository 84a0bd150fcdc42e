#pragma once

// Fractional-order probability on a compact support [t1, t2]: densities,
// the fractional CDF F_alpha, the weighted functional E and the CDF-bound
// chain. P_alpha(X <= x) is read as F_alpha(x) of the (possibly rescaled)
// density.

#include <optional>
#include <string>

#include "hsconv/chain_report.hpp"
#include "hsconv/convexity.hpp"
#include "hsconv/lf_integral.hpp"

namespace hsconv {

/// Catalog densities, each normalized classically on `support`.
namespace densities {
RealFn uniform(Interval support);
/// 2 (x - t1) / (t2 - t1)^2.
RealFn triangular_up(Interval support);
/// 2 (t2 - x) / (t2 - t1)^2.
RealFn triangular_down(Interval support);
/// (p + 1) (x - t1)^p / (t2 - t1)^(p+1), p > -1.
RealFn power(double p, Interval support);
}  // namespace densities

struct DistributionSpec {
    std::string id;
    /// Already multiplied by `scale`.
    RealFn density;
    Interval support;
    Alpha alpha{1.0};
    Backend backend = Backend::GammaPowerRule;
    /// Factor applied to the raw density (1 unless auto-rescaled).
    double scale = 1.0;
    /// t1_J_t2 of the raw density under `backend`.
    double raw_mass = 1.0;
    /// |t1_J_t2 density - 1| <= 1e-6 under `backend`.
    bool normalized = false;
    std::string note;
};

/// Samples the density for nonnegativity (DomainError otherwise) and checks
/// fractional normalization under `backend`. With `auto_rescale` the density
/// is divided by its fractional mass and the factor recorded; without it an
/// unnormalized density is kept and `note` names the factor to apply.
DistributionSpec make_distribution(std::string id, RealFn density, Interval support, Alpha alpha,
                                   Backend backend, const QuadratureSpec& quad = {},
                                   bool auto_rescale = false);

struct CdfValue {
    double value = 0.0;
    /// Non-empty when x was clamped to the support.
    std::string note;
};

/// t1_J_x density. Below t1 gives 0, above t2 gives F(t2); both noted.
CdfValue cdf_alpha(const DistributionSpec& dist, double x, Backend backend,
                   const QuadratureSpec& quad = {});

/// t1_J_t2 weight * density. Throws EvaluationError where the weight is not
/// finite on the support.
double e_functional(const DistributionSpec& dist, const RealFn& weight, Backend backend,
                    const QuadratureSpec& quad = {});

/// E(theta^alpha) - [t2^alpha - t1_J_t2 F_alpha]. Zero at alpha = 1.
double expectation_identity_residual(const DistributionSpec& dist, Backend backend,
                                     const QuadratureSpec& quad = {});

/// Two links over [pa, pb] = [phi(a), phi(b)] inside the support:
///   2^(alpha(s-1))/Gamma(1+alpha) P(X <= (pa+pb)/2)
///     <= (pb^alpha - E_alpha) / ((pb-pa)^alpha Gamma(1+alpha))
///     <= Gamma(1+alpha s)/Gamma(1+alpha(s+1)) (P(X <= pa) + P(X <= pb))
/// The density is certified against h = 1 on [a, b] and its range checked
/// against [0, 1] separately; both outcomes are recorded in the notes.
ChainReport prob_theorem_bounds(const DistributionSpec& dist, const PhiMap& phi, double a,
                                double b, SParam s, Backend backend,
                                const QuadratureSpec& quad = {});

}  // namespace hsconv
