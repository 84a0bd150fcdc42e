#pragma once

// Seeded generators for property tests. Each property draws from its own
// fixed seed so a failure reproduces by rerunning the test.

#include <cstdint>
#include <random>

namespace hsconv::proptest {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    /// alpha in (0, 1], with 1 drawn a quarter of the time.
    double alpha() { return integer(0, 3) == 0 ? 1.0 : real(0.05, 1.0); }

private:
    std::mt19937_64 rng_;
};

inline constexpr int kCases = 200;

}  // namespace hsconv::proptest
