#pragma once

// Generalised phi_{h-s} convexity: the grid certifier for
//
//   f(t phi(x) + (1-t) phi(y)) <= rho(t) f(phi(x)) + rho(1-t) f(phi(y)),
//
// the class taxonomy it unifies, the K-functional monotonicity check and the
// piecewise (gamma A^s + sigma)^alpha family.
//
// A grid verdict is a statement about the sampled points only; it is
// labelled certified_on_grid and never "proved".

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsconv/chain_report.hpp"
#include "hsconv/fractal_fn.hpp"
#include "hsconv/special_functions.hpp"

namespace hsconv {

class PhiMap {
public:
    static PhiMap identity();
    /// x -> p x + q.
    static PhiMap affine(double p, double q);
    static PhiMap exp();
    static PhiMap square_root();
    static PhiMap user(std::string id, RealFn fn);

    const std::string& id() const noexcept { return id_; }
    bool is_identity() const noexcept { return identity_; }

    /// Throws EvaluationError on a non-finite value.
    double operator()(double x) const;

private:
    PhiMap(std::string id, RealFn fn, bool identity);

    std::string id_;
    RealFn fn_;
    bool identity_ = false;
};

/// Points per axis of the (x, y, t) certification grid.
struct GridSpec {
    int nx = 21;
    int ny = 21;
    int nt = 21;

    /// Throws DomainError unless every axis has at least 3 points.
    void validate() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// n equally spaced points covering [lo, hi] inclusive.
std::vector<double> linspace(double lo, double hi, int n);

enum class VerdictStatus { CertifiedOnGrid, Violated, Indeterminate };

std::string_view to_string(VerdictStatus status);
VerdictStatus verdict_status_from_string(std::string_view name);

struct WitnessTriple {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;

    friend bool operator==(const WitnessTriple&, const WitnessTriple&) = default;
};

struct ConvexityVerdict {
    VerdictStatus status = VerdictStatus::Indeterminate;
    /// Present iff status == Violated; the largest violation, first in
    /// (x, y, t) lexicographic order on ties.
    std::optional<WitnessTriple> witness;
    /// Minimal slack rhs - lhs over the evaluated grid.
    double margin = 0.0;
    double tol_abs = 0.0;
    /// First point at which f could not be evaluated, if any.
    std::optional<double> failed_point;
    std::string note;

    friend bool operator==(const ConvexityVerdict&, const ConvexityVerdict&) = default;
};

/// Evaluates the defining inequality on the full (x, y, t) grid over
/// `interval`, with tol_abs = 1e-9 (1 + max |f| on the grid). An infinite
/// weight on the right counts as satisfied. Evaluation failures make the
/// verdict Indeterminate unless a genuine violation was also found.
ConvexityVerdict certify(const FractalFn& f, const PhiMap& phi, const RhoSpec& spec,
                         Interval interval, const GridSpec& grid = {});

/// Product rule as a checkable predicate: certifies f * g against
/// h'(t) = c * max(h1(t), h2(t)). The side condition h(t) + h(1-t) <= c is
/// sampled and reported in the note.
ConvexityVerdict certify_product(const FractalFn& f, const HFunction& h1, const FractalFn& g,
                                 const HFunction& h2, double c, const PhiMap& phi, SParam s,
                                 Interval interval, const GridSpec& grid = {});

enum class ConvexityClass {
    PFunction,
    GeneralisedConvex,
    BrecknerFirst,
    BrecknerSecond,
    HTildeConvex,
    GodunovaLevinS,
    MtSConvex,
    MtConvex,
};

std::string_view to_string(ConvexityClass c);

struct ClassTag {
    ConvexityClass kind;
    /// BrecknerFirst additionally needs t^s + (1-t)^s = 1, which for s < 1
    /// holds only at t in {0, 1}; such tags are emitted as conditional.
    bool conditional = false;

    friend bool operator==(const ClassTag&, const ClassTag&) = default;
};

/// Every class whose structural conditions on (h, s, phi) hold. An empty
/// result stands for "none".
std::vector<ClassTag> classify(const RhoSpec& spec, const PhiMap& phi);

/// K(lambda, s) = rho(lambda^(1/s)) + rho((1-lambda)^(1/s)). Needs s > 0.
double k_functional(double lambda, const RhoSpec& spec);

/// Checks, over r_i = phi(x_i) for `points` equally spaced x_i in
/// (range.lo, range.hi]:
///   * bound         f(r1) <= K f(r2) for every sampled r1 <= r2
///   * nondecreasing f(r_i) <= f(r_{i+1}), only when K <= 1
/// Each link carries its worst pair. Requires s in (0,1) and phi > 0 on the
/// sample (DomainError otherwise).
ChainReport check_t1_monotonicity(const FractalFn& f, const PhiMap& phi, const RhoSpec& spec,
                                  double lambda, Interval range, int points = 50);

/// f(A) = beta^alpha at A = 0, (gamma A^s + sigma)^alpha for A > 0, with the
/// family's two hypotheses sampled on a t-grid and attached.
struct E1Family {
    FractalFn fn;
    /// rho(t) + rho(1-t) == 1 on the sampled grid.
    bool partition_of_unity = false;
    /// t^(alpha s) <= rho(t) on the sampled grid.
    bool power_lower_bound = false;
};

E1Family example_e1(double beta, double gamma_c, double sigma, SParam s, Alpha alpha,
                    const HFunction& h = HFunction::one());

}  // namespace hsconv
