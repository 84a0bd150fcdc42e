#include "hsconv/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "hsconv/catalog.hpp"
#include "hsconv/hh_engine.hpp"
#include "hsconv/lf_integral.hpp"

namespace hsconv {

namespace {

const std::set<std::string> kChains = {"hh",          "refined", "k9-point",  "k9-reflect",
                                       "k9-integral", "lemma",   "corollary", "t1"};
const std::set<std::string> kSearchChains = {"hh",         "refined",     "k9-point",
                                             "k9-reflect", "k9-integral", "lemma"};
const std::set<std::string> kScenarioKeys = {
    "id",   "function", "phi",  "h",    "s",       "alpha",   "interval", "backend", "chain",
    "params", "grid",   "quad", "seed", "density", "support", "rescale",  "search",  "sweep"};
const std::set<std::string> kParamKeys = {"lambda", "t",    "x",     "u",
                                          "v",      "kind", "range", "points"};
std::string format_issue_list(const std::string& path, const std::vector<ConfigIssue>& issues) {
    std::ostringstream os;
    os << "invalid config " << path << ":";
    for (const auto& i : issues) os << "\n  " << path << ":" << i.line << ":" << i.column << ": " << i.message;
    return os.str();
}

std::optional<double> to_real(const std::string& text) {
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    while (first != last && *first == ' ') ++first;
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        if (text == ".inf" || text == "inf") return kInfinity;
        return std::nullopt;
    }
    return v;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        out.push_back(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) return out;
        start = comma + 1;
    }
}

/// Collects issues for one document while building configs from nodes.
class Reader {
public:
    std::vector<ConfigIssue> issues;

    void issue(const YAML::Node& at, const std::string& message) {
        const auto m = at.Mark();
        issues.push_back({m.line + 1, m.column + 1, message});
    }

    std::optional<double> real(const YAML::Node& n, const std::string& key) {
        if (n.IsScalar()) {
            if (auto v = to_real(n.Scalar())) return v;
        }
        issue(n, key + ": expected a number");
        return std::nullopt;
    }

    std::optional<std::string> text(const YAML::Node& n, const std::string& key) {
        if (n.IsScalar()) return n.Scalar();
        issue(n, key + ": expected a string");
        return std::nullopt;
    }

    std::optional<long long> integer(const YAML::Node& n, const std::string& key) {
        if (n.IsScalar()) {
            long long v = 0;
            const auto& s = n.Scalar();
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return v;
        }
        issue(n, key + ": expected an integer");
        return std::nullopt;
    }

    std::optional<Interval> interval(const YAML::Node& n, const std::string& key) {
        if (n.IsSequence() && n.size() == 2) {
            auto lo = real(n[0], key);
            auto hi = real(n[1], key);
            if (lo && hi) return Interval{*lo, *hi};
            return std::nullopt;
        }
        issue(n, key + ": expected [lo, hi]");
        return std::nullopt;
    }

    std::vector<double> reals(const YAML::Node& n, const std::string& key) {
        std::vector<double> out;
        if (!n.IsSequence()) {
            issue(n, key + ": expected a list of numbers");
            return out;
        }
        for (const auto& item : n) {
            if (auto v = real(item, key)) out.push_back(*v);
        }
        return out;
    }

    std::vector<std::string> texts(const YAML::Node& n, const std::string& key) {
        std::vector<std::string> out;
        if (!n.IsSequence()) {
            issue(n, key + ": expected a list of names");
            return out;
        }
        for (const auto& item : n) {
            if (auto v = text(item, key)) out.push_back(*v);
        }
        return out;
    }

    void apply(const std::string& key, const YAML::Node& v, ScenarioConfig& c) {
        if (key == "id") {
            if (auto t = text(v, key)) c.id = *t;
        } else if (key == "function") {
            if (auto t = text(v, key)) c.function = *t;
        } else if (key == "phi") {
            if (auto t = text(v, key)) c.phi = *t;
        } else if (key == "h") {
            if (auto t = text(v, key)) c.h = *t;
        } else if (key == "density") {
            if (auto t = text(v, key)) c.density = *t;
        } else if (key == "backend") {
            if (auto t = text(v, key)) c.backend = *t;
        } else if (key == "chain") {
            if (auto t = text(v, key)) c.chain = *t;
        } else if (key == "s") {
            if (auto r = real(v, key)) c.s = *r;
        } else if (key == "alpha") {
            if (auto r = real(v, key)) c.alpha = *r;
        } else if (key == "interval") {
            if (auto i = interval(v, key)) c.interval = *i;
        } else if (key == "support") {
            if (auto i = interval(v, key)) c.support = *i;
        } else if (key == "seed") {
            if (auto i = integer(v, key)) {
                if (*i < 0) {
                    issue(v, "seed must be nonnegative");
                } else {
                    c.seed = static_cast<std::uint64_t>(*i);
                }
            }
        } else if (key == "rescale") {
            if (v.IsScalar() && (v.Scalar() == "true" || v.Scalar() == "false")) {
                c.rescale = v.Scalar() == "true";
            } else {
                issue(v, "rescale: expected true or false");
            }
        } else if (key == "grid") {
            apply_grid(v, c.grid);
        } else if (key == "quad") {
            apply_quad(v, c.quad);
        } else if (key == "params") {
            apply_params(v, c.params);
        } else if (key == "search") {
            c.search = read_search(v);
        } else {
            issue(v, "unknown key '" + key + "'");
        }
    }

private:
    void apply_grid(const YAML::Node& v, GridSpec& g) {
        if (v.IsScalar()) {
            if (auto n = integer(v, "grid")) g = {int(*n), int(*n), int(*n)};
        } else if (v.IsSequence() && v.size() == 3) {
            auto x = integer(v[0], "grid");
            auto y = integer(v[1], "grid");
            auto t = integer(v[2], "grid");
            if (x && y && t) g = {int(*x), int(*y), int(*t)};
        } else {
            issue(v, "grid: expected an integer or [nx, ny, nt]");
        }
    }

    void apply_quad(const YAML::Node& v, QuadratureSpec& q) {
        if (!v.IsMap()) {
            issue(v, "quad: expected a mapping");
            return;
        }
        for (const auto& kv : v) {
            const auto key = kv.first.Scalar();
            if (key == "panels") {
                if (auto n = integer(kv.second, key)) q.panels = int(*n);
            } else if (key == "nodes_per_panel") {
                if (auto n = integer(kv.second, key)) q.nodes_per_panel = int(*n);
            } else if (key == "tol") {
                if (auto r = real(kv.second, key)) q.tol = *r;
            } else {
                issue(kv.first, "unknown quad key '" + key + "'");
            }
        }
    }

    void apply_params(const YAML::Node& v, std::map<std::string, std::string>& out) {
        if (!v.IsMap()) {
            issue(v, "params: expected a mapping");
            return;
        }
        for (const auto& kv : v) {
            const auto key = kv.first.Scalar();
            if (!kParamKeys.count(key)) {
                issue(kv.first, "unknown parameter '" + key + "'");
                continue;
            }
            if (kv.second.IsScalar()) {
                out[key] = kv.second.Scalar();
            } else if (kv.second.IsSequence()) {
                std::string joined;
                for (const auto& item : kv.second) {
                    if (!item.IsScalar()) {
                        issue(item, key + ": expected scalar list items");
                        continue;
                    }
                    if (!joined.empty()) joined += ",";
                    joined += item.Scalar();
                }
                out[key] = joined;
            } else {
                issue(kv.second, key + ": expected a value or a list");
            }
        }
    }

    std::optional<SearchConfig> read_search(const YAML::Node& v) {
        if (!v.IsMap()) {
            issue(v, "search: expected a mapping");
            return std::nullopt;
        }
        SearchConfig s;
        for (const auto& kv : v) {
            const auto key = kv.first.Scalar();
            const auto& val = kv.second;
            if (key == "strategy") {
                if (auto t = text(val, key)) s.strategy = *t;
            } else if (key == "samples") {
                if (auto n = integer(val, key)) {
                    if (*n < 1) {
                        issue(val, "samples must be positive");
                    } else {
                        s.samples = static_cast<std::size_t>(*n);
                    }
                }
            } else if (key == "functions") {
                s.functions = texts(val, key);
            } else if (key == "phis") {
                s.phis = texts(val, key);
            } else if (key == "hs") {
                s.hs = texts(val, key);
            } else if (key == "s") {
                s.s_values = reals(val, key);
            } else if (key == "alpha") {
                s.alphas = reals(val, key);
            } else if (key == "params") {
                s.params = reals(val, key);
            } else if (key == "residual_threshold") {
                if (auto r = real(val, key)) s.residual_threshold = *r;
            } else if (key == "uv") {
                if (!val.IsSequence()) {
                    issue(val, "uv: expected a list of [u, v] pairs");
                    continue;
                }
                for (const auto& pair : val) {
                    if (auto i = interval(pair, key)) s.uv_pairs.emplace_back(i->lo, i->hi);
                }
            } else {
                issue(kv.first, "unknown search key '" + key + "'");
            }
        }
        return s;
    }
};

std::vector<std::pair<std::string, std::string>> field_issues(const ScenarioConfig& c) {
    std::vector<std::pair<std::string, std::string>> out;
    auto check = [&out](const std::string& field, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            out.emplace_back(field, e.what());
        }
    };

    double alpha = 1.0;
    double s = 1.0;
    check("alpha", [&] { alpha = Alpha(c.alpha).value(); });
    check("s", [&] { s = SParam(c.s).value(); });
    const Alpha a(alpha);
    const SParam sp(s);

    bool interval_ok = true;
    if (!(c.interval.lo < c.interval.hi) || !std::isfinite(c.interval.lo) ||
        !std::isfinite(c.interval.hi)) {
        out.emplace_back("interval", "interval must be finite with lo < hi");
        interval_ok = false;
    }
    (void)interval_ok;
    check("support", [&] {
        if (!(c.support.lo < c.support.hi) || !std::isfinite(c.support.lo) ||
            !std::isfinite(c.support.hi)) {
            throw DomainError("support must be finite with lo < hi");
        }
        resolve_density(c.density, c.support, a);
    });
    check("backend", [&] { backend_from_string(c.backend); });
    if (!kChains.count(c.chain)) {
        out.emplace_back("chain", "unknown chain '" + c.chain +
                                      "' (expected hh, refined, k9-point, k9-reflect, "
                                      "k9-integral, lemma, corollary or t1)");
    }
    check("function", [&] { resolve_function(c.function, a, sp); });
    check("phi", [&] { resolve_phi(c.phi); });
    check("h", [&] { resolve_h(c.h); });
    check("grid", [&] { c.grid.validate(); });
    check("quad", [&] { c.quad.validate(); });

    for (const auto& [key, value] : c.params) {
        if (key == "kind") {
            check("params", [&] { corollary_kind_from_string(value); });
            continue;
        }
        for (const auto& piece : split_commas(value)) {
            if (!to_real(piece)) {
                out.emplace_back("params", "parameter '" + key + "': '" + piece + "' is not a number");
            }
        }
    }

    if (c.search) {
        const auto& q = *c.search;
        if (q.strategy != "grid" && q.strategy != "random") {
            out.emplace_back("search", "search strategy must be grid or random, got '" + q.strategy + "'");
        }
        if (!kSearchChains.count(c.chain)) {
            out.emplace_back("chain", "chain '" + c.chain + "' cannot be searched");
        }
        for (const auto& f : q.functions) check("search", [&] { resolve_function(f, a, sp); });
        for (const auto& p : q.phis) check("search", [&] { resolve_phi(p); });
        for (const auto& h : q.hs) check("search", [&] { resolve_h(h); });
        for (double v : q.alphas) check("search", [&] { Alpha{v}; });
        for (double v : q.s_values) check("search", [&] { SParam{v}; });
    }
    return out;
}

}  // namespace

bool is_known_chain(const std::string& name) { return kChains.count(name) > 0; }

ConfigError::ConfigError(std::string path, std::vector<ConfigIssue> issues)
    : Error(format_issue_list(path, issues)), issues_(std::move(issues)) {}

std::vector<std::string> validate(const ScenarioConfig& config) {
    std::vector<std::string> out;
    for (auto& [field, msg] : field_issues(config)) out.push_back(field + ": " + msg);
    return out;
}

std::vector<ScenarioConfig> parse_config_text(const std::string& text, const std::string& origin) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(origin, {{e.mark.line + 1, e.mark.column + 1, e.msg}});
    }

    Reader r;
    if (!root.IsMap()) {
        r.issue(root, "top level must be a mapping with 'scenarios'");
        throw ConfigError(origin, r.issues);
    }

    ScenarioConfig defaults;
    std::map<std::string, YAML::Mark> default_marks;
    YAML::Node scenarios;
    for (const auto& kv : root) {
        const auto key = kv.first.Scalar();
        if (key == "defaults") {
            if (!kv.second.IsMap()) {
                r.issue(kv.second, "defaults: expected a mapping");
                continue;
            }
            for (const auto& d : kv.second) {
                const auto dk = d.first.Scalar();
                if (dk == "id" || dk == "sweep") {
                    r.issue(d.first, "'" + dk + "' is not allowed in defaults");
                    continue;
                }
                r.apply(dk, d.second, defaults);
                default_marks[dk] = d.second.Mark();
            }
        } else if (key == "scenarios") {
            scenarios = kv.second;
        } else {
            r.issue(kv.first, "unknown key '" + key + "'");
        }
    }
    if (!scenarios || !scenarios.IsSequence()) {
        r.issue(root, "'scenarios' must be a list");
        throw ConfigError(origin, r.issues);
    }

    std::vector<ScenarioConfig> out;
    std::size_t index = 0;
    for (const auto& node : scenarios) {
        ++index;
        if (!node.IsMap()) {
            r.issue(node, "scenario entries must be mappings");
            continue;
        }
        ScenarioConfig base = defaults;
        base.line = node.Mark().line + 1;
        auto marks = default_marks;
        YAML::Node sweep;
        bool has_sweep = false;
        for (const auto& kv : node) {
            const auto key = kv.first.Scalar();
            marks[key] = kv.second.Mark();
            if (key == "sweep") {
                sweep = kv.second;
                has_sweep = true;
                continue;
            }
            if (!kScenarioKeys.count(key)) {
                r.issue(kv.first, "unknown key '" + key + "'");
                continue;
            }
            r.apply(key, kv.second, base);
        }
        if (base.id.empty()) base.id = "scenario-" + std::to_string(index);

        std::vector<ScenarioConfig> expanded{base};
        std::vector<std::string> tags{""};
        if (has_sweep && !sweep.IsMap()) {
            r.issue(sweep, "sweep: expected a mapping of key to list");
        } else if (has_sweep) {
            for (const auto& kv : sweep) {
                const auto key = kv.first.Scalar();
                if (key == "id" || key == "search" || !kScenarioKeys.count(key)) {
                    r.issue(kv.first, "cannot sweep over '" + key + "'");
                    continue;
                }
                if (!kv.second.IsSequence() || kv.second.size() == 0) {
                    r.issue(kv.second, "sweep '" + key + "': expected a non-empty list");
                    continue;
                }
                marks[key] = kv.second.Mark();
                std::vector<ScenarioConfig> next;
                std::vector<std::string> next_tags;
                for (std::size_t i = 0; i < expanded.size(); ++i) {
                    for (const auto& value : kv.second) {
                        ScenarioConfig c = expanded[i];
                        r.apply(key, value, c);
                        const std::string shown = value.IsScalar() ? value.Scalar() : "?";
                        next_tags.push_back(tags[i] + (tags[i].empty() ? "" : ",") + key + "=" + shown);
                        next.push_back(std::move(c));
                    }
                }
                expanded = std::move(next);
                tags = std::move(next_tags);
            }
            for (std::size_t i = 0; i < expanded.size(); ++i) {
                if (!tags[i].empty()) expanded[i].id += "[" + tags[i] + "]";
            }
        }

        for (auto& c : expanded) {
            for (const auto& [field, msg] : field_issues(c)) {
                const auto it = marks.find(field);
                const YAML::Mark m = it != marks.end() ? it->second : node.Mark();
                r.issues.push_back({m.line + 1, m.column + 1, "scenario '" + c.id + "': " + msg});
            }
            out.push_back(std::move(c));
        }
    }

    if (!r.issues.empty()) throw ConfigError(origin, r.issues);
    return out;
}

std::vector<ScenarioConfig> parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, {{0, 0, "cannot open file"}});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::vector<double> param_list(const ScenarioConfig& c, const std::string& key,
                               std::vector<double> fallback) {
    const auto it = c.params.find(key);
    if (it == c.params.end()) return fallback;
    std::vector<double> out;
    for (const auto& piece : split_commas(it->second)) {
        const auto v = to_real(piece);
        if (!v) throw DomainError("parameter '" + key + "': '" + piece + "' is not a number");
        out.push_back(*v);
    }
    return out;
}

double param_real(const ScenarioConfig& c, const std::string& key, double fallback) {
    const auto list = param_list(c, key, {fallback});
    if (list.size() != 1) throw DomainError("parameter '" + key + "' must be a single number");
    return list.front();
}

std::string param_text(const ScenarioConfig& c, const std::string& key, std::string fallback) {
    const auto it = c.params.find(key);
    return it == c.params.end() ? fallback : it->second;
}

}  // namespace hsconv
