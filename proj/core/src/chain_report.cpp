#include "hsconv/chain_report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace hsconv {

std::string_view to_string(LinkStatus status) {
    switch (status) {
        case LinkStatus::Pass: return "pass";
        case LinkStatus::Fail: return "fail";
        case LinkStatus::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

LinkStatus link_status_from_string(std::string_view name) {
    if (name == "pass") return LinkStatus::Pass;
    if (name == "fail") return LinkStatus::Fail;
    if (name == "indeterminate") return LinkStatus::Indeterminate;
    throw DomainError("unknown link status '" + std::string(name) + "'");
}

double link_tolerance(double lhs, double rhs) {
    double scale = 0.0;
    if (std::isfinite(lhs)) scale = std::max(scale, std::abs(lhs));
    if (std::isfinite(rhs)) scale = std::max(scale, std::abs(rhs));
    return 1e-9 * (1.0 + scale);
}

ChainLink make_link(std::string label, double lhs, double rhs, std::string note) {
    ChainLink link;
    link.label = std::move(label);
    link.lhs = lhs;
    link.rhs = rhs;
    link.note = std::move(note);
    if (std::isnan(lhs) || std::isnan(rhs)) {
        link.margin = std::numeric_limits<double>::quiet_NaN();
        link.status = LinkStatus::Indeterminate;
        return link;
    }
    if (rhs == kInfinity) {
        link.margin = kInfinity;
        link.status = LinkStatus::Pass;
        return link;
    }
    link.margin = rhs - lhs;
    link.status = link.margin >= -link_tolerance(lhs, rhs) ? LinkStatus::Pass : LinkStatus::Fail;
    return link;
}

bool ChainReport::all_pass() const {
    return std::all_of(links.begin(), links.end(),
                       [](const ChainLink& l) { return l.status == LinkStatus::Pass; });
}

bool ChainReport::any_fail() const {
    return std::any_of(links.begin(), links.end(),
                       [](const ChainLink& l) { return l.status == LinkStatus::Fail; });
}

double ChainReport::min_margin() const {
    double m = kInfinity;
    for (const auto& l : links) {
        if (!std::isnan(l.margin)) m = std::min(m, l.margin);
    }
    return m;
}

void ChainReport::mark_indeterminate(const std::string& why) {
    for (auto& l : links) l.status = LinkStatus::Indeterminate;
    notes.push_back(why);
}

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace hsconv
