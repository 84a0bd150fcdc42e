#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hsconv/lf_integral.hpp"

namespace hsconv {

enum class LinkStatus { Pass, Fail, Indeterminate };

std::string_view to_string(LinkStatus status);
LinkStatus link_status_from_string(std::string_view name);

/// One inequality lhs <= rhs of a chain.
struct ChainLink {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    LinkStatus status = LinkStatus::Indeterminate;
    std::string note;

    friend bool operator==(const ChainLink&, const ChainLink&) = default;
};

/// tol_abs = 1e-9 * (1 + max(|lhs|, |rhs|)).
double link_tolerance(double lhs, double rhs);

/// Builds a link with margin rhs - lhs; pass iff margin >= -tol_abs. NaN on
/// either side yields Indeterminate; an infinite rhs always passes.
ChainLink make_link(std::string label, double lhs, double rhs, std::string note = {});

struct ChainReport {
    std::string chain_id;
    std::vector<ChainLink> links;
    Backend backend = Backend::GammaPowerRule;
    std::map<std::string, std::string> params;
    std::vector<std::string> notes;

    bool all_pass() const;
    bool any_fail() const;
    /// Smallest margin over links, +infinity when there are none.
    double min_margin() const;
    /// Marks every link Indeterminate, keeping values, and appends `why`.
    void mark_indeterminate(const std::string& why);

    friend bool operator==(const ChainReport&, const ChainReport&) = default;
};

/// Shortest round-trip decimal rendering, used for parameter echoes.
std::string format_real(double x);

}  // namespace hsconv
