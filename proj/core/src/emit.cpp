#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hsconv/report.hpp"

namespace hsconv {

namespace {

using json = nlohmann::ordered_json;

// Non-finite reals travel as the strings "inf", "-inf", "nan".
json real(double x) {
    if (std::isfinite(x)) return x;
    return format_real(x);
}

double real_of(const json& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::nan("");
    throw Error("expected a number, got '" + s + "'");
}

json optional_real(const std::optional<double>& x) { return x ? real(*x) : json(nullptr); }

std::optional<double> optional_real_of(const json& j) {
    if (j.is_null()) return std::nullopt;
    return real_of(j);
}

json string_map(const std::map<std::string, std::string>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

std::map<std::string, std::string> string_map_of(const json& j) {
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : j.items()) m[k] = v.get<std::string>();
    return m;
}

json interval(Interval i) { return json::array({real(i.lo), real(i.hi)}); }
Interval interval_of(const json& j) { return {real_of(j.at(0)), real_of(j.at(1))}; }

json reals(const std::vector<double>& v) {
    json j = json::array();
    for (double x : v) j.push_back(real(x));
    return j;
}

std::vector<double> reals_of(const json& j) {
    std::vector<double> v;
    for (const auto& x : j) v.push_back(real_of(x));
    return v;
}

json config_json(const ScenarioConfig& c) {
    json j;
    j["id"] = c.id;
    j["function"] = c.function;
    j["phi"] = c.phi;
    j["h"] = c.h;
    j["s"] = real(c.s);
    j["alpha"] = real(c.alpha);
    j["interval"] = interval(c.interval);
    j["backend"] = c.backend;
    j["chain"] = c.chain;
    j["params"] = string_map(c.params);
    j["grid"] = json::array({c.grid.nx, c.grid.ny, c.grid.nt});
    j["quad"] = {{"panels", c.quad.panels},
                 {"nodes_per_panel", c.quad.nodes_per_panel},
                 {"tol", real(c.quad.tol)}};
    j["seed"] = c.seed;
    j["density"] = c.density;
    j["support"] = interval(c.support);
    j["rescale"] = c.rescale;
    if (c.search) {
        const auto& s = *c.search;
        json uv = json::array();
        for (const auto& [u, v] : s.uv_pairs) uv.push_back(json::array({real(u), real(v)}));
        j["search"] = {{"strategy", s.strategy},
                       {"samples", s.samples},
                       {"functions", s.functions},
                       {"phis", s.phis},
                       {"hs", s.hs},
                       {"s", reals(s.s_values)},
                       {"alpha", reals(s.alphas)},
                       {"params", reals(s.params)},
                       {"uv", uv},
                       {"residual_threshold", real(s.residual_threshold)}};
    } else {
        j["search"] = nullptr;
    }
    j["line"] = c.line;
    return j;
}

ScenarioConfig config_of(const json& j) {
    ScenarioConfig c;
    c.id = j.at("id").get<std::string>();
    c.function = j.at("function").get<std::string>();
    c.phi = j.at("phi").get<std::string>();
    c.h = j.at("h").get<std::string>();
    c.s = real_of(j.at("s"));
    c.alpha = real_of(j.at("alpha"));
    c.interval = interval_of(j.at("interval"));
    c.backend = j.at("backend").get<std::string>();
    c.chain = j.at("chain").get<std::string>();
    c.params = string_map_of(j.at("params"));
    c.grid = {j.at("grid").at(0).get<int>(), j.at("grid").at(1).get<int>(),
              j.at("grid").at(2).get<int>()};
    c.quad = {j.at("quad").at("panels").get<int>(), j.at("quad").at("nodes_per_panel").get<int>(),
              real_of(j.at("quad").at("tol"))};
    c.seed = j.at("seed").get<std::uint64_t>();
    c.density = j.at("density").get<std::string>();
    c.support = interval_of(j.at("support"));
    c.rescale = j.at("rescale").get<bool>();
    if (!j.at("search").is_null()) {
        const auto& q = j.at("search");
        SearchConfig s;
        s.strategy = q.at("strategy").get<std::string>();
        s.samples = q.at("samples").get<std::size_t>();
        s.functions = q.at("functions").get<std::vector<std::string>>();
        s.phis = q.at("phis").get<std::vector<std::string>>();
        s.hs = q.at("hs").get<std::vector<std::string>>();
        s.s_values = reals_of(q.at("s"));
        s.alphas = reals_of(q.at("alpha"));
        s.params = reals_of(q.at("params"));
        for (const auto& p : q.at("uv")) s.uv_pairs.emplace_back(real_of(p.at(0)), real_of(p.at(1)));
        s.residual_threshold = real_of(q.at("residual_threshold"));
        c.search = std::move(s);
    }
    c.line = j.at("line").get<int>();
    return c;
}

json chain_json(const ChainReport& r) {
    json links = json::array();
    for (const auto& l : r.links) {
        links.push_back({{"label", l.label},
                         {"lhs", real(l.lhs)},
                         {"rhs", real(l.rhs)},
                         {"margin", real(l.margin)},
                         {"status", to_string(l.status)},
                         {"note", l.note}});
    }
    return {{"chain_id", r.chain_id},
            {"backend", to_string(r.backend)},
            {"params", string_map(r.params)},
            {"links", links},
            {"notes", r.notes}};
}

ChainReport chain_of(const json& j) {
    ChainReport r;
    r.chain_id = j.at("chain_id").get<std::string>();
    r.backend = backend_from_string(j.at("backend").get<std::string>());
    r.params = string_map_of(j.at("params"));
    for (const auto& l : j.at("links")) {
        ChainLink link;
        link.label = l.at("label").get<std::string>();
        link.lhs = real_of(l.at("lhs"));
        link.rhs = real_of(l.at("rhs"));
        link.margin = real_of(l.at("margin"));
        link.status = link_status_from_string(l.at("status").get<std::string>());
        link.note = l.at("note").get<std::string>();
        r.links.push_back(std::move(link));
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

json verdict_json(const ConvexityVerdict& v) {
    json witness = nullptr;
    if (v.witness) {
        const auto& w = *v.witness;
        witness = {{"x", real(w.x)}, {"y", real(w.y)}, {"t", real(w.t)},
                   {"lhs", real(w.lhs)}, {"rhs", real(w.rhs)}};
    }
    return {{"status", to_string(v.status)},
            {"witness", witness},
            {"margin", real(v.margin)},
            {"tol_abs", real(v.tol_abs)},
            {"failed_point", optional_real(v.failed_point)},
            {"note", v.note}};
}

ConvexityVerdict verdict_of(const json& j) {
    ConvexityVerdict v;
    v.status = verdict_status_from_string(j.at("status").get<std::string>());
    if (!j.at("witness").is_null()) {
        const auto& w = j.at("witness");
        v.witness = WitnessTriple{real_of(w.at("x")), real_of(w.at("y")), real_of(w.at("t")),
                                  real_of(w.at("lhs")), real_of(w.at("rhs"))};
    }
    v.margin = real_of(j.at("margin"));
    v.tol_abs = real_of(j.at("tol_abs"));
    v.failed_point = optional_real_of(j.at("failed_point"));
    v.note = j.at("note").get<std::string>();
    return v;
}

json residual_json(const ResidualRecord& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        entries.push_back({{"label", e.label},
                           {"value", real(e.value)},
                           {"threshold", optional_real(e.threshold)},
                           {"status", residual_status(e)}});
    }
    return {{"kind", r.kind}, {"params", string_map(r.params)}, {"entries", entries}};
}

ResidualRecord residual_of(const json& j) {
    ResidualRecord r;
    r.kind = j.at("kind").get<std::string>();
    r.params = string_map_of(j.at("params"));
    for (const auto& e : j.at("entries")) {
        r.entries.push_back({e.at("label").get<std::string>(), real_of(e.at("value")),
                             optional_real_of(e.at("threshold"))});
    }
    return r;
}

json search_json(const SearchRecord& r) {
    json witness = nullptr;
    if (r.witness) {
        const auto& w = *r.witness;
        witness = {{"scenario_index", w.scenario_index},
                   {"scenario", string_map(w.scenario)},
                   {"failing_link", w.failing_link},
                   {"margin", real(w.margin)},
                   {"report", chain_json(w.report)}};
    }
    return {{"chain", r.chain},
            {"strategy", r.strategy},
            {"seed", r.seed},
            {"samples", r.samples},
            {"space_size", r.space_size},
            {"evaluated", r.evaluated},
            {"errors", r.errors},
            {"witness", witness}};
}

SearchRecord search_of(const json& j) {
    SearchRecord r;
    r.chain = j.at("chain").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.samples = j.at("samples").get<std::size_t>();
    r.space_size = j.at("space_size").get<std::size_t>();
    r.evaluated = j.at("evaluated").get<std::size_t>();
    r.errors = j.at("errors").get<std::size_t>();
    if (!j.at("witness").is_null()) {
        const auto& w = j.at("witness");
        r.witness = WitnessCertificate{w.at("scenario_index").get<std::size_t>(),
                                       string_map_of(w.at("scenario")), chain_of(w.at("report")),
                                       w.at("failing_link").get<std::string>(),
                                       real_of(w.at("margin"))};
    }
    return r;
}

json record_json(const Record& r) {
    json j;
    j["scenario_id"] = r.scenario_id;
    j["config"] = config_json(r.config);
    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ChainReport>) {
                j["type"] = "chain";
                j["result"] = chain_json(p);
            } else if constexpr (std::is_same_v<T, ConvexityVerdict>) {
                j["type"] = "verdict";
                j["result"] = verdict_json(p);
            } else if constexpr (std::is_same_v<T, ResidualRecord>) {
                j["type"] = "residual";
                j["result"] = residual_json(p);
            } else {
                j["type"] = "search";
                j["result"] = search_json(p);
            }
        },
        r.payload);
    j["tags"] = r.tags;
    j["error"] = r.error;
    return j;
}

Record record_of(const json& j) {
    Record r;
    r.scenario_id = j.at("scenario_id").get<std::string>();
    r.config = config_of(j.at("config"));
    const auto type = j.at("type").get<std::string>();
    const auto& res = j.at("result");
    if (type == "chain") {
        r.payload = chain_of(res);
    } else if (type == "verdict") {
        r.payload = verdict_of(res);
    } else if (type == "residual") {
        r.payload = residual_of(res);
    } else if (type == "search") {
        r.payload = search_of(res);
    } else {
        throw Error("unknown record type '" + type + "'");
    }
    r.tags = j.at("tags").get<std::vector<std::string>>();
    r.error = j.at("error").get<std::string>();
    return r;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

EmitFormat emit_format_from_string(std::string_view name) {
    if (name == "json") return EmitFormat::Json;
    if (name == "csv") return EmitFormat::Csv;
    throw DomainError("unknown format '" + std::string(name) + "' (expected json or csv)");
}

std::string to_json(const ReportDocument& doc) {
    json j;
    j["tool_version"] = doc.tool_version;
    j["command"] = doc.command;
    json records = json::array();
    for (const auto& r : doc.records) records.push_back(record_json(r));
    j["records"] = records;
    j["summary"] = {{"pass", doc.summary.pass},
                    {"fail", doc.summary.fail},
                    {"indeterminate", doc.summary.indeterminate},
                    {"reported", doc.summary.reported},
                    {"errors", doc.summary.errors}};
    return j.dump(2) + "\n";
}

ReportDocument document_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        ReportDocument doc;
        doc.tool_version = j.at("tool_version").get<std::string>();
        doc.command = j.at("command").get<std::string>();
        for (const auto& r : j.at("records")) doc.records.push_back(record_of(r));
        const auto& s = j.at("summary");
        doc.summary = {s.at("pass").get<std::size_t>(), s.at("fail").get<std::size_t>(),
                       s.at("indeterminate").get<std::size_t>(),
                       s.at("reported").get<std::size_t>(), s.at("errors").get<std::size_t>()};
        return doc;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed report document: ") + e.what());
    }
}

std::string to_csv(const ReportDocument& doc) {
    std::ostringstream os;
    os << "scenario_id,chain_id,label,lhs,rhs,margin,status,backend,alpha,s\n";
    auto row = [&os](const Record& r, const std::string& chain_id, const std::string& label,
                     double lhs, double rhs, double margin, std::string_view status,
                     const std::string& backend) {
        os << csv_field(r.scenario_id) << ',' << csv_field(chain_id) << ',' << csv_field(label)
           << ',' << format_real(lhs) << ',' << format_real(rhs) << ',' << format_real(margin)
           << ',' << status << ',' << backend << ',' << format_real(r.config.alpha) << ','
           << format_real(r.config.s) << '\n';
    };
    const double nan = std::nan("");
    for (const auto& r : doc.records) {
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, ChainReport>) {
                    for (const auto& l : p.links) {
                        row(r, p.chain_id, l.label, l.lhs, l.rhs, l.margin, to_string(l.status),
                            std::string(to_string(p.backend)));
                    }
                } else if constexpr (std::is_same_v<T, ConvexityVerdict>) {
                    row(r, "certify", "convexity on grid", p.witness ? p.witness->lhs : nan,
                        p.witness ? p.witness->rhs : nan, p.margin, to_string(p.status),
                        r.config.backend);
                } else if constexpr (std::is_same_v<T, ResidualRecord>) {
                    for (const auto& e : p.entries) {
                        const double t = e.threshold.value_or(nan);
                        row(r, p.kind, e.label, e.value, t, t - std::abs(e.value),
                            residual_status(e), r.config.backend);
                    }
                } else {
                    if (p.witness) {
                        for (const auto& l : p.witness->report.links) {
                            row(r, "search:" + p.witness->report.chain_id, l.label, l.lhs, l.rhs,
                                l.margin, to_string(l.status), r.config.backend);
                        }
                    } else {
                        row(r, "search:" + p.chain, "no witness", nan, nan, nan, "pass",
                            r.config.backend);
                    }
                }
            },
            r.payload);
    }
    return os.str();
}

void emit(const ReportDocument& doc, EmitFormat format, const std::string& path) {
    const std::string text = format == EmitFormat::Json ? to_json(doc) : to_csv(doc);
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw Error("cannot write report to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (!out) throw Error("failed writing report to '" + path + "'");
}

}  // namespace hsconv
