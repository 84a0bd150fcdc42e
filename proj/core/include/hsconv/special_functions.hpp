#pragma once

// Scalar kernels: Gamma, the Mittag-Leffler series on R^alpha, and the
// rho-weight family (t / h(t))^(alpha s) that parameterizes every
// convexity class in the library.
//
// Fractal elements x^alpha are represented by their real values, so the
// ordering and arithmetic used everywhere downstream is ordinary real
// ordering and arithmetic.

#include <cstddef>
#include <functional>
#include <limits>
#include <string>

#include "hsconv/types.hpp"

namespace hsconv {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Gamma(x) for x > 0. Throws DomainError for x <= 0 or on overflow.
double gamma(double x);

/// E_alpha(x^alpha) = sum_k x^(alpha k) / Gamma(1 + k alpha), x >= 0.
///
/// Summation stops once two consecutive terms fall below
/// tol * (1 + |partial sum|). Throws ConvergenceError (carrying the partial
/// sum) if `max_terms` terms are not enough.
double mittag_leffler(Alpha alpha, double x, double tol = 1e-16, std::size_t max_terms = 10000);

/// The h in rho_s(t) = (t / h(t))^s.
///
/// Catalog entries know their endpoint limits (mt vanishes at both ends,
/// square at 0). User entries are plain callables; where they vanish the
/// ratio t / h(t) is estimated from just inside the interval.
class HFunction {
public:
    enum class Kind { One, Square, Mt, Power, User };

    static HFunction one();
    static HFunction square();
    /// h(t) = 2 sqrt(t - t^2).
    static HFunction mt();
    /// h(t) = t^p.
    static HFunction power(double p);
    /// `extends_past_one` says whether `fn` is meaningful for t > 1.
    static HFunction user(std::string id, std::function<double(double)> fn,
                          bool extends_past_one = true);

    Kind kind() const noexcept { return kind_; }
    const std::string& id() const noexcept { return id_; }
    double param() const noexcept { return param_; }
    bool extends_past_one() const noexcept { return extends_past_one_; }

    /// h(t). Throws DomainError where h is not defined.
    double operator()(double t) const;

    /// t / h(t) with endpoint limits; +infinity where the limit diverges.
    /// Valid on [0,1], and on (1, inf) when the expression extends.
    double ratio(double t) const;

private:
    HFunction(Kind kind, std::string id, double param, std::function<double(double)> fn,
              bool extends_past_one);

    Kind kind_;
    std::string id_;
    double param_ = 0.0;
    std::function<double(double)> fn_;
    bool extends_past_one_ = true;
};

struct RhoSpec {
    HFunction h;
    SParam s;
    Alpha alpha;
};

/// rho_s(t) = (t / h(t))^s on [0,1]; s == 0 gives 1 (0^0 = 1).
double rho_s(const RhoSpec& spec, double t);

/// rho_{alpha s}(t) = rho_s(t)^alpha on [0,1]. May return +infinity.
double rho(const RhoSpec& spec, double t);

/// rho_{alpha s} evaluated by the same formula on [0, inf). For t > 1 this
/// requires h to extend past the unit interval; otherwise DomainError naming
/// the gap.
double rho_extended(const RhoSpec& spec, double t);

}  // namespace hsconv
