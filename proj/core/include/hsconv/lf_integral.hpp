#pragma once

// Operational backends for the local fractional integral a_J_b^alpha.
//
//   GammaPowerRule  1/Gamma(alpha) * int_a^b (b - tau)^(alpha-1) f(tau) dtau
//   FractalMeasure  1/Gamma(1+alpha) * int_a^b f(tau) d((tau - a)^alpha)
//   Classical       int_a^b f(tau) dtau, alpha = 1 only
//
// All three coincide at alpha = 1. The kernel singularity is removed by the
// substitution tau = b - (b-a) u^(1/alpha) (resp. a + (b-a) u^(1/alpha)),
// which turns both fractional backends into
//   (b-a)^alpha / Gamma(1+alpha) * int_0^1 f(tau(u)) du.

#include <string>
#include <string_view>

#include "hsconv/fractal_fn.hpp"
#include "hsconv/quadrature.hpp"
#include "hsconv/special_functions.hpp"

namespace hsconv {

enum class Backend { GammaPowerRule, FractalMeasure, Classical };

std::string_view to_string(Backend backend);
/// Accepts gamma_power_rule, fractal_measure, classical. Throws DomainError.
Backend backend_from_string(std::string_view name);

/// a_J_b^alpha f under `backend`.
///
/// Throws DomainError when a >= b (or alpha != 1 for Classical) and
/// EvaluationError, carrying the abscissa, when f is not finite at an
/// interior quadrature node.
double lf_integral(const RealFn& f, double a, double b, Alpha alpha, Backend backend,
                   const QuadratureSpec& quad = {});

/// Closed form of 0_J_x^alpha t^(k alpha):
/// Gamma(1 + k alpha) / Gamma(1 + (k+1) alpha) * x^((k+1) alpha).
double power_rule_oracle(double k, Alpha alpha, double x);

/// 0_J_1^alpha rho_{alpha s}(t).
double unit_rho_integral(const RhoSpec& spec, Backend backend, const QuadratureSpec& quad = {});

/// 0_J_1^alpha [rho_{alpha s}(t) - rho_{alpha s}(1-t)]. A diagnostic: zero at
/// alpha = 1, generally not for alpha < 1.
double reflection_residual(const RhoSpec& spec, Backend backend, const QuadratureSpec& quad = {});

}  // namespace hsconv
