#pragma once

// Hermite-Hadamard chain evaluators. Every chain is evaluated link by link
// under an explicit integral backend; nothing here assumes one backend is
// the ground truth for alpha < 1.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsconv/chain_report.hpp"
#include "hsconv/convexity.hpp"

namespace hsconv {

/// Everything a chain evaluation needs: f, phi, the rho weight, the
/// interval [a, b] whose images phi(a), phi(b) the chain works on, and the
/// integral semantics.
struct ChainProblem {
    FractalFn f;
    PhiMap phi;
    RhoSpec rho;
    double a = 0.0;
    double b = 1.0;
    Backend backend = Backend::GammaPowerRule;
    QuadratureSpec quad{};

    Alpha alpha() const { return rho.alpha; }
    /// Parameter echo shared by every report.
    std::map<std::string, std::string> echo() const;
};

/// Midpoint bound <= normalized integral <= endpoint bound.
///   L1: f((pa+pb)/2) / (2^alpha Gamma(1+alpha) rho(1/2)) <= pa_J_pb f / (pb-pa)^alpha
///   L2: pa_J_pb f / (pb-pa)^alpha <= (f(pa) + f(pb)) 0_J_1 rho
ChainReport hh_chain(const ChainProblem& p);

enum class CorollaryKind { BrecknerSecond, GeneralisedConvex, PFunction };

std::string_view to_string(CorollaryKind kind);
CorollaryKind corollary_kind_from_string(std::string_view name);

/// The specialized corollaries with their constants computed directly:
///   breckner_second     2^((s-1) alpha) f(mid) <= Gamma(1+alpha)/(b-a)^alpha a_J_b f
///   generalised_convex  f(mid)/Gamma(1+alpha) <= a_J_b f/(b-a)^alpha
///                       <= Gamma(1+alpha)/Gamma(1+2 alpha) (f(a)+f(b))
///   p_function          2^-alpha/Gamma(1+alpha) f(mid) <= a_J_b f/(b-a)^alpha
///                       <= (f(a)+f(b))/Gamma(1+alpha)
/// `s` is used by breckner_second only.
ChainReport corollary_bounds(CorollaryKind kind, const FractalFn& f, double a, double b,
                             Alpha alpha, SParam s, Backend backend,
                             const QuadratureSpec& quad = {});

/// LHS - RHS of the splitting identity
///   0_J_1 f((1-t) pa + t pb)
///     = (1-lambda)^alpha 0_J_1 f((1-t) m + t pb) + lambda^alpha 0_J_1 f((1-t) pa + t m),
/// m = (1-lambda) pa + lambda pb, every integral under the same backend.
/// Requires phi > 0 on [a, b].
double lemma_split_residual(const ChainProblem& p, double lambda);

/// Four links of the lambda-refinement, the third term built from the
/// split-interval estimates:
///   T0 = f(mid)/Gamma(1+alpha)
///   T1 = [rho(1-lambda) f(((1-lambda) pa + (1+lambda) pb)/2)
///         + rho(lambda) f(((2-lambda) pa + lambda pb)/2)] / Gamma(1+alpha)
///   T2 = pa_J_pb f / (pb-pa)^alpha
///   T3 = [f((1-lambda) pa + lambda pb) + lambda^alpha f(pa) + (1-lambda)^alpha f(pb)] 0_J_1 rho
///   T4 = (f(pa) + f(pb)) 0_J_1 rho
/// When rho(t) <= t^alpha fails on the sampled t-grid the links are marked
/// indeterminate.
ChainReport refined_chain_lambda(const ChainProblem& p, double lambda);

struct XFunctionalParams {
    double u = 0.0;
    double v = 0.0;
    double varrho = 0.0;
};

/// X[u,v,varrho] = rho(u) f(pa) + rho(v) f(pb)
///                 - rho(2 varrho) ((f(pa)+f(pb))/2 - f((pa+pb)/2)).
/// rho(2 varrho) past 1 uses the same formula when h extends; otherwise
/// DomainError naming the gap.
double x_functional(const ChainProblem& p, XFunctionalParams params);

/// X[1-t,t,C] <= f((1-t) pa + t pb) <= X[1-t,t,c], c = min(t,1-t),
/// C = max(t,1-t). Throws HypothesisError unless rho_s(t) = t on a sampled
/// grid (linear and multiplicative weight).
ChainReport k9_pointwise_bounds(const ChainProblem& p, double t);

/// X[1,1,2C] - f(px) <= f(pa + pb - px) <= X[1,1,2c] - f(px) with
/// c, C the min/max of (pb-px)/(pb-pa) and (px-pa)/(pb-pa).
ChainReport k9_reflection_bounds(const ChainProblem& p, double x);

/// Compares f(pa + pb - (pu+pv)/2) + J f/|pv-pu|^alpha over the interval
/// between phi(u) and phi(v) with 0_J_1 of X[1,1,2C1+2C2] and
/// X[1,1,2c1+2c2] in t, all integrals under the problem's backend.
ChainReport k9_integral_chain(const ChainProblem& p, double u, double v);

// --- violation search -------------------------------------------------------

enum class ChainKind { Hh, Refined, K9Point, K9Reflect, K9Integral, Lemma };

std::string_view to_string(ChainKind kind);
/// Accepts hh, refined, k9-point, k9-reflect, k9-integral, lemma.
ChainKind chain_kind_from_string(std::string_view name);

struct NamedFunction {
    std::string name;
    std::function<FractalFn(Alpha)> make;
};

/// A Cartesian product of scenario ingredients. `chain_params` holds lambda
/// (refined, lemma), t (k9-point) or x (k9-reflect); `uv_pairs` feeds
/// k9-integral. Empty parameter lists fall back to a single default.
struct ScenarioSpace {
    std::vector<NamedFunction> functions;
    std::vector<PhiMap> phis{PhiMap::identity()};
    std::vector<HFunction> hs{HFunction::one()};
    std::vector<double> s_values{1.0};
    std::vector<double> alphas{1.0};
    std::vector<Interval> intervals{{0.0, 1.0}};
    std::vector<double> chain_params;
    std::vector<std::pair<double, double>> uv_pairs;
    Backend backend = Backend::GammaPowerRule;
    QuadratureSpec quad{};
    /// Lemma residuals with magnitude above this count as a failed link.
    double residual_threshold = 1e-6;

    std::size_t size() const;
};

struct SearchStrategy {
    enum class Kind { Grid, Random };
    Kind kind = Kind::Grid;
    std::uint64_t seed = 0;
    std::size_t samples = 0;

    static SearchStrategy grid() { return {}; }
    static SearchStrategy random(std::uint64_t seed, std::size_t n) {
        return {Kind::Random, seed, n};
    }
};

struct WitnessCertificate {
    std::size_t scenario_index = 0;
    std::map<std::string, std::string> scenario;
    ChainReport report;
    std::string failing_link;
    double margin = 0.0;

    friend bool operator==(const WitnessCertificate&, const WitnessCertificate&) = default;
};

struct SearchOutcome {
    std::optional<WitnessCertificate> witness;
    std::size_t evaluated = 0;
    std::size_t errors = 0;
};

/// Grid: the first scenario (in product order) with a failing link.
/// Random: among `samples` seeded draws, the one with the most negative
/// failing margin, lowest index on ties. Scenarios that throw are counted
/// in `errors` and skipped.
SearchOutcome violation_search(ChainKind chain, const ScenarioSpace& space,
                               const SearchStrategy& strategy);

}  // namespace hsconv
