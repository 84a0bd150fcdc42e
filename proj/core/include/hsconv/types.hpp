#pragma once

#include <string>

#include "hsconv/errors.hpp"

namespace hsconv {

/// Fractal order, 0 < alpha <= 1.
class Alpha {
public:
    explicit Alpha(double value) : value_(value) {
        if (!(value > 0.0 && value <= 1.0)) {
            throw DomainError("alpha must lie in (0,1], got " + std::to_string(value));
        }
    }

    double value() const noexcept { return value_; }
    bool is_one() const noexcept { return value_ == 1.0; }

    friend bool operator==(Alpha, Alpha) = default;

private:
    double value_;
};

/// Convexity exponent s, 0 <= s <= 1.
class SParam {
public:
    explicit SParam(double value) : value_(value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw DomainError("s must lie in [0,1], got " + std::to_string(value));
        }
    }

    double value() const noexcept { return value_; }

    friend bool operator==(SParam, SParam) = default;

private:
    double value_;
};

/// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace hsconv
