#pragma once

// Batch execution of scenario configs and the report document it produces.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hsconv/config.hpp"
#include "hsconv/convexity.hpp"
#include "hsconv/hh_engine.hpp"

namespace hsconv {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Command { Certify, Chain, LemmaResidual, Prob, Quadcheck, Search };

std::string_view to_string(Command command);
Command command_from_string(std::string_view name);

/// A scalar diagnostic. With a threshold it passes iff |value| <= threshold;
/// without one it is only reported.
struct ResidualEntry {
    std::string label;
    double value = 0.0;
    std::optional<double> threshold;

    friend bool operator==(const ResidualEntry&, const ResidualEntry&) = default;
};

/// pass, fail, indeterminate (non-finite value) or reported.
std::string_view residual_status(const ResidualEntry& entry);

struct ResidualRecord {
    std::string kind;
    std::map<std::string, std::string> params;
    std::vector<ResidualEntry> entries;

    friend bool operator==(const ResidualRecord&, const ResidualRecord&) = default;
};

struct SearchRecord {
    std::string chain;
    std::string strategy;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::size_t space_size = 0;
    std::size_t evaluated = 0;
    std::size_t errors = 0;
    std::optional<WitnessCertificate> witness;

    friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

using RecordPayload = std::variant<ChainReport, ConvexityVerdict, ResidualRecord, SearchRecord>;

struct Record {
    std::string scenario_id;
    /// The config actually run, overrides applied.
    ScenarioConfig config;
    RecordPayload payload;
    /// Convexity classes matched by (h, s, phi); certify only.
    std::vector<std::string> tags;
    /// Non-empty when the scenario threw; the payload is then a single
    /// indeterminate link carrying the message.
    std::string error;

    friend bool operator==(const Record&, const Record&) = default;
};

struct Summary {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t indeterminate = 0;
    std::size_t reported = 0;
    std::size_t errors = 0;

    friend bool operator==(const Summary&, const Summary&) = default;
};

/// Counts links, verdicts, residual entries and search outcomes (a found
/// witness is a fail, none found a pass).
Summary tally(const std::vector<Record>& records);

struct ReportDocument {
    std::string tool_version{kToolVersion};
    std::string command;
    std::vector<Record> records;
    Summary summary;

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

struct RunOverrides {
    std::optional<std::string> backend;
    std::optional<std::string> chain;
    std::optional<std::uint64_t> seed;
};

/// Applies the overrides and revalidates. Throws ConfigError.
void apply_overrides(std::vector<ScenarioConfig>& configs, const RunOverrides& overrides);

/// Runs every scenario in config order. A scenario that throws becomes an
/// error record; the batch always completes.
ReportDocument run(const std::vector<ScenarioConfig>& configs, Command command);

/// 0 when there are no failures and no errors, 1 otherwise.
int exit_code(const Summary& summary);

enum class EmitFormat { Json, Csv };

EmitFormat emit_format_from_string(std::string_view name);

std::string to_json(const ReportDocument& doc);
/// Inverse of to_json. Throws Error on malformed input.
ReportDocument document_from_json(const std::string& text);

/// Header plus one row per link, verdict, residual entry or search outcome.
std::string to_csv(const ReportDocument& doc);

/// Writes to `path`, or stdout when `path` is empty or "-". Throws Error
/// naming the path on I/O failure.
void emit(const ReportDocument& doc, EmitFormat format, const std::string& path);

}  // namespace hsconv
