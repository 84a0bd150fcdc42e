#include <cmath>

#include "hsconv/catalog.hpp"
#include "hsconv/lf_integral.hpp"
#include "hsconv/probability.hpp"
#include "hsconv/report.hpp"

namespace hsconv {

std::string_view to_string(Command command) {
    switch (command) {
        case Command::Certify: return "certify";
        case Command::Chain: return "chain";
        case Command::LemmaResidual: return "lemma-residual";
        case Command::Prob: return "prob";
        case Command::Quadcheck: return "quadcheck";
        case Command::Search: return "search";
    }
    return "unknown";
}

Command command_from_string(std::string_view name) {
    if (name == "certify") return Command::Certify;
    if (name == "chain") return Command::Chain;
    if (name == "lemma-residual") return Command::LemmaResidual;
    if (name == "prob") return Command::Prob;
    if (name == "quadcheck") return Command::Quadcheck;
    if (name == "search") return Command::Search;
    throw DomainError("unknown command '" + std::string(name) + "'");
}

std::string_view residual_status(const ResidualEntry& entry) {
    if (!std::isfinite(entry.value)) return "indeterminate";
    if (!entry.threshold) return "reported";
    return std::abs(entry.value) <= *entry.threshold ? "pass" : "fail";
}

namespace {

void count(Summary& s, std::string_view status) {
    if (status == "pass") {
        ++s.pass;
    } else if (status == "fail") {
        ++s.fail;
    } else if (status == "reported") {
        ++s.reported;
    } else {
        ++s.indeterminate;
    }
}

std::string_view verdict_tally_status(VerdictStatus v) {
    switch (v) {
        case VerdictStatus::CertifiedOnGrid: return "pass";
        case VerdictStatus::Violated: return "fail";
        case VerdictStatus::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

struct Resolved {
    Alpha alpha;
    SParam s;
    Backend backend;
    FractalFn f;
    PhiMap phi;
    HFunction h;
};

Resolved resolve(const ScenarioConfig& c) {
    const Alpha alpha(c.alpha);
    const SParam s(c.s);
    return {alpha,
            s,
            backend_from_string(c.backend),
            resolve_function(c.function, alpha, s),
            resolve_phi(c.phi),
            resolve_h(c.h)};
}

ChainProblem problem(const ScenarioConfig& c, const Resolved& r) {
    return {r.f, r.phi, RhoSpec{r.h, r.s, r.alpha}, c.interval.lo, c.interval.hi, r.backend, c.quad};
}

Record make_record(const ScenarioConfig& c, RecordPayload payload) {
    return Record{c.id, c, std::move(payload), {}, {}};
}

ResidualRecord lemma_record(const ScenarioConfig& c, const Resolved& r) {
    ResidualRecord rec;
    rec.kind = "lemma";
    rec.params = problem(c, r).echo();
    for (double lambda : param_list(c, "lambda", {0.0, 0.25, 0.5, 0.75, 1.0})) {
        const double res = lemma_split_residual(problem(c, r), lambda);
        std::optional<double> threshold;
        if (r.alpha.is_one() || lambda == 0.0 || lambda == 1.0) threshold = 1e-8;
        rec.entries.push_back({"lambda=" + format_real(lambda), res, threshold});
    }
    return rec;
}

void run_chain(const ScenarioConfig& c, std::vector<Record>& out) {
    const Resolved r = resolve(c);
    const ChainProblem p = problem(c, r);
    const double lo = c.interval.lo;
    const double hi = c.interval.hi;

    if (c.chain == "hh") {
        out.push_back(make_record(c, hh_chain(p)));
    } else if (c.chain == "refined") {
        for (double lambda : param_list(c, "lambda", {0.5})) {
            out.push_back(make_record(c, refined_chain_lambda(p, lambda)));
        }
    } else if (c.chain == "k9-point") {
        for (double t : param_list(c, "t", {0.25})) {
            out.push_back(make_record(c, k9_pointwise_bounds(p, t)));
        }
    } else if (c.chain == "k9-reflect") {
        for (double x : param_list(c, "x", {lo + 0.25 * (hi - lo)})) {
            out.push_back(make_record(c, k9_reflection_bounds(p, x)));
        }
    } else if (c.chain == "k9-integral") {
        const auto us = param_list(c, "u", {lo});
        const auto vs = param_list(c, "v", {hi});
        if (us.size() != vs.size()) throw DomainError("k9-integral: u and v lists differ in length");
        for (std::size_t i = 0; i < us.size(); ++i) {
            out.push_back(make_record(c, k9_integral_chain(p, us[i], vs[i])));
        }
    } else if (c.chain == "lemma") {
        out.push_back(make_record(c, lemma_record(c, r)));
    } else if (c.chain == "corollary") {
        const auto kind = corollary_kind_from_string(param_text(c, "kind", "generalised_convex"));
        out.push_back(make_record(
            c, corollary_bounds(kind, r.f, lo, hi, r.alpha, r.s, r.backend, c.quad)));
    } else if (c.chain == "t1") {
        const double lambda = param_real(c, "lambda", 0.5);
        const auto range = param_list(c, "range", {0.0, 2.0});
        if (range.size() != 2) throw DomainError("t1: range must be lo,hi");
        const int points = static_cast<int>(param_real(c, "points", 50));
        out.push_back(make_record(c, check_t1_monotonicity(r.f, r.phi, RhoSpec{r.h, r.s, r.alpha},
                                                           lambda, {range[0], range[1]}, points)));
    } else {
        throw DomainError("unknown chain '" + c.chain + "'");
    }
}

void run_certify(const ScenarioConfig& c, std::vector<Record>& out) {
    const Resolved r = resolve(c);
    const RhoSpec spec{r.h, r.s, r.alpha};
    Record rec = make_record(c, certify(r.f, r.phi, spec, c.interval, c.grid));
    for (const auto& tag : classify(spec, r.phi)) {
        rec.tags.push_back(std::string(to_string(tag.kind)) + (tag.conditional ? " (conditional)" : ""));
    }
    out.push_back(std::move(rec));
}

void run_prob(const ScenarioConfig& c, std::vector<Record>& out) {
    const Alpha alpha(c.alpha);
    const SParam s(c.s);
    const Backend backend = backend_from_string(c.backend);
    const auto dist = make_distribution(c.density, resolve_density(c.density, c.support, alpha),
                                        c.support, alpha, backend, c.quad, c.rescale);
    out.push_back(make_record(c, prob_theorem_bounds(dist, resolve_phi(c.phi), c.interval.lo,
                                                     c.interval.hi, s, backend, c.quad)));

    ResidualRecord rec;
    rec.kind = "prob";
    rec.params = {{"density", c.density},
                  {"alpha", format_real(alpha.value())},
                  {"backend", c.backend},
                  {"scale", format_real(dist.scale)}};
    if (!dist.note.empty()) rec.params["note"] = dist.note;
    rec.entries.push_back({"fractional mass - 1", dist.raw_mass * dist.scale - 1.0, 1e-6});
    std::optional<double> threshold;
    if (alpha.is_one()) threshold = 1e-8;
    rec.entries.push_back(
        {"expectation identity", expectation_identity_residual(dist, backend, c.quad), threshold});
    out.push_back(make_record(c, std::move(rec)));
}

void run_quadcheck(const ScenarioConfig& c, std::vector<Record>& out) {
    const Alpha alpha(c.alpha);
    const SParam s(c.s);
    const Backend backend = backend_from_string(c.backend);
    const double a = alpha.value();
    const double x = c.interval.hi;
    if (!(x > 0.0)) throw DomainError("quadcheck: interval upper end must be positive");

    ResidualRecord rec;
    rec.kind = "quadcheck";
    rec.params = {{"alpha", format_real(a)}, {"backend", c.backend}, {"x", format_real(x)},
                  {"h", c.h}, {"s", format_real(s.value())}};
    // The power rule closed form is a statement about the Riemann-Liouville
    // backend; elsewhere the gap is only reported.
    const bool oracle_applies = backend == Backend::GammaPowerRule || alpha.is_one();
    for (int k = 0; k <= 3; ++k) {
        const double got = lf_integral([a, k](double t) { return std::pow(t, k * a); }, 0.0, x,
                                       alpha, backend, c.quad);
        const double want = power_rule_oracle(k, alpha, x);
        std::optional<double> threshold;
        if (oracle_applies) threshold = 1e-8;
        rec.entries.push_back({"power rule k=" + std::to_string(k) + " relative error",
                               (got - want) / want, threshold});
    }
    const RhoSpec spec{resolve_h(c.h), s, alpha};
    std::optional<double> reflection_threshold;
    if (alpha.is_one()) reflection_threshold = 1e-9;
    rec.entries.push_back(
        {"reflection residual", reflection_residual(spec, backend, c.quad), reflection_threshold});
    out.push_back(make_record(c, std::move(rec)));
}

void run_search(const ScenarioConfig& c, std::vector<Record>& out) {
    const SearchConfig q = c.search.value_or(SearchConfig{});
    const SParam s(c.s);
    ScenarioSpace space;
    for (const auto& f : q.functions.empty() ? std::vector<std::string>{c.function} : q.functions) {
        space.functions.push_back(resolve_named_function(f, s));
    }
    space.phis.clear();
    for (const auto& p : q.phis.empty() ? std::vector<std::string>{c.phi} : q.phis) {
        space.phis.push_back(resolve_phi(p));
    }
    space.hs.clear();
    for (const auto& h : q.hs.empty() ? std::vector<std::string>{c.h} : q.hs) {
        space.hs.push_back(resolve_h(h));
    }
    space.s_values = q.s_values.empty() ? std::vector<double>{c.s} : q.s_values;
    space.alphas = q.alphas.empty() ? std::vector<double>{c.alpha} : q.alphas;
    space.intervals = {c.interval};
    space.chain_params = q.params;
    space.uv_pairs = q.uv_pairs;
    space.backend = backend_from_string(c.backend);
    space.quad = c.quad;
    space.residual_threshold = q.residual_threshold;

    const auto strategy = q.strategy == "random" ? SearchStrategy::random(c.seed, q.samples)
                                                 : SearchStrategy::grid();
    const auto outcome = violation_search(chain_kind_from_string(c.chain), space, strategy);

    SearchRecord rec;
    rec.chain = c.chain;
    rec.strategy = q.strategy;
    rec.seed = c.seed;
    rec.samples = strategy.kind == SearchStrategy::Kind::Random ? q.samples : 0;
    rec.space_size = space.size();
    rec.evaluated = outcome.evaluated;
    rec.errors = outcome.errors;
    rec.witness = outcome.witness;
    out.push_back(make_record(c, std::move(rec)));
}

}  // namespace

Summary tally(const std::vector<Record>& records) {
    Summary s;
    for (const auto& r : records) {
        if (!r.error.empty()) ++s.errors;
        std::visit(
            [&s](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, ChainReport>) {
                    for (const auto& l : p.links) count(s, to_string(l.status));
                } else if constexpr (std::is_same_v<T, ConvexityVerdict>) {
                    count(s, verdict_tally_status(p.status));
                } else if constexpr (std::is_same_v<T, ResidualRecord>) {
                    for (const auto& e : p.entries) count(s, residual_status(e));
                } else {
                    count(s, p.witness ? "fail" : "pass");
                }
            },
            r.payload);
    }
    return s;
}

void apply_overrides(std::vector<ScenarioConfig>& configs, const RunOverrides& overrides) {
    std::vector<ConfigIssue> issues;
    for (auto& c : configs) {
        if (overrides.backend) c.backend = *overrides.backend;
        if (overrides.chain) c.chain = *overrides.chain;
        if (overrides.seed) c.seed = *overrides.seed;
        for (const auto& msg : validate(c)) {
            issues.push_back({c.line, 0, "scenario '" + c.id + "': " + msg});
        }
    }
    if (!issues.empty()) throw ConfigError("<overrides>", std::move(issues));
}

ReportDocument run(const std::vector<ScenarioConfig>& configs, Command command) {
    ReportDocument doc;
    doc.command = std::string(to_string(command));
    for (const auto& c : configs) {
        std::vector<Record> produced;
        try {
            switch (command) {
                case Command::Certify: run_certify(c, produced); break;
                case Command::Chain: run_chain(c, produced); break;
                case Command::LemmaResidual: {
                    const Resolved r = resolve(c);
                    produced.push_back(make_record(c, lemma_record(c, r)));
                    break;
                }
                case Command::Prob: run_prob(c, produced); break;
                case Command::Quadcheck: run_quadcheck(c, produced); break;
                case Command::Search: run_search(c, produced); break;
            }
        } catch (const std::exception& e) {
            ChainReport failed;
            failed.chain_id = "error";
            failed.links.push_back(make_link("error", std::nan(""), std::nan(""), e.what()));
            failed.notes.push_back(e.what());
            Record rec = make_record(c, std::move(failed));
            rec.error = e.what();
            produced = {std::move(rec)};
        }
        for (auto& r : produced) doc.records.push_back(std::move(r));
    }
    doc.summary = tally(doc.records);
    return doc;
}

int exit_code(const Summary& summary) { return summary.fail > 0 || summary.errors > 0 ? 1 : 0; }

}  // namespace hsconv
