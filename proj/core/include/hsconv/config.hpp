#pragma once

// Scenario configs, written in YAML:
//
//   defaults:                 # optional; any scenario key except id/sweep
//     backend: gamma_power_rule
//   scenarios:
//     - id: hh-square
//       function: square      # catalog name or expression in x
//       phi: identity
//       h: one
//       s: 1
//       alpha: 1
//       interval: [0, 1]
//       chain: hh
//       params: {lambda: 0.5} # chain parameters; sequences are allowed
//       sweep: {alpha: [0.3, 0.5, 1], s: [0, 0.5, 1]}
//
// A sweep expands into the Cartesian product of its lists, first key
// outermost. Every value is validated before anything is evaluated.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hsconv/convexity.hpp"
#include "hsconv/errors.hpp"
#include "hsconv/quadrature.hpp"
#include "hsconv/types.hpp"

namespace hsconv {

struct SearchConfig {
    std::string strategy = "grid";  // grid | random
    std::size_t samples = 100;
    std::vector<std::string> functions;
    std::vector<std::string> phis;
    std::vector<std::string> hs;
    std::vector<double> s_values;
    std::vector<double> alphas;
    std::vector<double> params;
    std::vector<std::pair<double, double>> uv_pairs;
    double residual_threshold = 1e-6;

    friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

struct ScenarioConfig {
    std::string id;
    std::string function = "square";
    std::string phi = "identity";
    std::string h = "one";
    double s = 1.0;
    double alpha = 1.0;
    Interval interval{0.0, 1.0};
    std::string backend = "gamma_power_rule";
    std::string chain = "hh";
    /// Sequence values are stored comma-joined.
    std::map<std::string, std::string> params;
    GridSpec grid{};
    QuadratureSpec quad{};
    std::uint64_t seed = 0;
    std::string density = "uniform";
    Interval support{0.0, 1.0};
    bool rescale = false;
    std::optional<SearchConfig> search;
    /// Line of the scenario entry in the source file; 0 when built in code.
    int line = 0;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Chains accepted in `chain`: hh, refined, k9-point, k9-reflect,
/// k9-integral, lemma, corollary, t1.
bool is_known_chain(const std::string& name);

struct ConfigIssue {
    int line = 0;
    int column = 0;
    std::string message;
};

class ConfigError : public Error {
public:
    ConfigError(std::string path, std::vector<ConfigIssue> issues);
    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

/// Throws ConfigError listing every issue found, each anchored at line:col.
std::vector<ScenarioConfig> parse_config(const std::string& path);
std::vector<ScenarioConfig> parse_config_text(const std::string& text,
                                              const std::string& origin = "<string>");

/// Semantic checks on an already built config (names resolve, ranges hold).
/// Returns the messages; empty means valid.
std::vector<std::string> validate(const ScenarioConfig& config);

/// Parameter helpers: comma-joined lists of reals.
std::vector<double> param_list(const ScenarioConfig& c, const std::string& key,
                               std::vector<double> fallback);
double param_real(const ScenarioConfig& c, const std::string& key, double fallback);
std::string param_text(const ScenarioConfig& c, const std::string& key, std::string fallback);

}  // namespace hsconv
