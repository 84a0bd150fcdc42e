#include <cmath>

#include <gtest/gtest.h>

#include "gen.hpp"
#include "hsconv/probability.hpp"

using namespace hsconv;

namespace {

const Interval kUnit{0.0, 1.0};

DistributionSpec dist(const char* id, RealFn density, double alpha = 1.0,
                      Backend be = Backend::GammaPowerRule, bool rescale = false) {
    return make_distribution(id, std::move(density), kUnit, Alpha(alpha), be, {}, rescale);
}

}  // namespace

TEST(Densities, ClassicalMassIsOne) {
    const Interval s{1.0, 3.0};
    for (const auto& d : {densities::uniform(s), densities::triangular_up(s),
                          densities::triangular_down(s), densities::power(2.5, s)}) {
        EXPECT_NEAR(lf_integral(d, s.lo, s.hi, Alpha(1.0), Backend::Classical), 1.0, 1e-10);
    }
    EXPECT_THROW(densities::uniform({1.0, 1.0}), DomainError);
    EXPECT_THROW(densities::power(-1.0, kUnit), DomainError);
}

TEST(Distribution, RejectsNegativeDensity) {
    EXPECT_THROW(dist("neg", [](double x) { return x - 0.5; }), DomainError);
}

TEST(Distribution, FractionalMassNoteAndRescale) {
    const auto raw = dist("uniform", densities::uniform(kUnit), 0.5, Backend::FractalMeasure);
    EXPECT_NEAR(raw.raw_mass, 1.0 / std::tgamma(1.5), 1e-10);
    EXPECT_FALSE(raw.normalized);
    EXPECT_NE(raw.note.find("rescale the density by"), std::string::npos);

    const auto scaled = dist("uniform", densities::uniform(kUnit), 0.5, Backend::FractalMeasure, true);
    EXPECT_TRUE(scaled.normalized);
    EXPECT_NEAR(scaled.scale, std::tgamma(1.5), 1e-10);
    EXPECT_NEAR(cdf_alpha(scaled, 1.0, Backend::FractalMeasure).value, 1.0, 1e-9);
}

TEST(Cdf, ClassicalValues) {
    const auto u = dist("uniform", densities::uniform(kUnit));
    const auto up = dist("up", densities::triangular_up(kUnit));
    const auto down = dist("down", densities::triangular_down(kUnit));
    EXPECT_NEAR(cdf_alpha(u, 0.3, Backend::GammaPowerRule).value, 0.3, 1e-12);
    EXPECT_NEAR(cdf_alpha(up, 0.5, Backend::GammaPowerRule).value, 0.25, 1e-12);
    EXPECT_NEAR(cdf_alpha(down, 0.5, Backend::GammaPowerRule).value, 0.75, 1e-12);
}

TEST(Cdf, ClampsOutsideSupport) {
    const auto u = dist("uniform", densities::uniform(kUnit));
    const auto below = cdf_alpha(u, -1.0, Backend::GammaPowerRule);
    EXPECT_EQ(below.value, 0.0);
    EXPECT_FALSE(below.note.empty());
    const auto above = cdf_alpha(u, 2.0, Backend::GammaPowerRule);
    EXPECT_NEAR(above.value, 1.0, 1e-12);
    EXPECT_FALSE(above.note.empty());
    EXPECT_TRUE(cdf_alpha(u, 0.5, Backend::GammaPowerRule).note.empty());
}

TEST(Cdf, GammaPowerRuleClosedForms) {
    // Under the power rule, F(x) = x^alpha / Gamma(1+alpha) * mean of the
    // density along t = x (1 - u^(1/alpha)); for 2(1-t) the mean is
    // 2 (1 - x / (1 + alpha)).
    for (double a : {0.3, 0.6}) {
        const auto down = dist("down", densities::triangular_down(kUnit), a);
        for (double x : {0.2, 0.5, 0.9}) {
            const double expect = std::pow(x, a) / std::tgamma(1 + a) * 2 * (1 - x / (1 + a));
            EXPECT_NEAR(cdf_alpha(down, x, Backend::GammaPowerRule).value, expect, 1e-9);
        }
    }
}

TEST(Cdf, MonotoneUnderFractalMeasure) {
    proptest::Gen gen(11);
    for (int c = 0; c < 40; ++c) {
        const double a = gen.alpha();
        for (const auto& d : {densities::uniform(kUnit), densities::triangular_up(kUnit),
                              densities::triangular_down(kUnit), densities::power(1.7, kUnit)}) {
            const auto ds = dist("d", d, a, Backend::FractalMeasure);
            double prev = 0.0;
            for (double x : linspace(0.0, 1.0, 26)) {
                const double v = cdf_alpha(ds, x, Backend::FractalMeasure).value;
                EXPECT_GE(v, prev - 1e-12) << "alpha=" << a << " x=" << x;
                prev = v;
            }
        }
    }
}

TEST(Cdf, MonotoneUnderPowerRuleForIncreasingMassDensities) {
    proptest::Gen gen(12);
    for (int c = 0; c < 40; ++c) {
        const double a = gen.alpha();
        for (const auto& d : {densities::uniform(kUnit), densities::triangular_up(kUnit),
                              densities::power(0.5, kUnit)}) {
            const auto ds = dist("d", d, a);
            double prev = 0.0;
            for (double x : linspace(0.0, 1.0, 26)) {
                const double v = cdf_alpha(ds, x, Backend::GammaPowerRule).value;
                EXPECT_GE(v, prev - 1e-12) << "alpha=" << a << " x=" << x;
                prev = v;
            }
        }
    }
}

TEST(Cdf, PowerRuleDecreasesForTriangularDown) {
    // d/dx [x^a (1 - x/(1+a))] has the sign of a - x.
    const auto down = dist("down", densities::triangular_down(kUnit), 0.3);
    const double f5 = cdf_alpha(down, 0.5, Backend::GammaPowerRule).value;
    const double f9 = cdf_alpha(down, 0.9, Backend::GammaPowerRule).value;
    EXPECT_LT(f9, f5);
}

TEST(EFunctional, Examples) {
    const auto u = dist("uniform", densities::uniform(kUnit));
    EXPECT_NEAR(e_functional(u, [](double x) { return x; }, Backend::GammaPowerRule), 0.5, 1e-12);
    const auto up = dist("up", densities::triangular_up(kUnit));
    EXPECT_NEAR(e_functional(up, [](double x) { return x; }, Backend::GammaPowerRule), 2.0 / 3.0, 1e-12);
    EXPECT_THROW(e_functional(u, [](double x) { return x > 0.25 ? kInfinity : x; }, Backend::Classical),
                 EvaluationError);
}

TEST(EFunctional, UnitWeightIsTotalCdf) {
    for (double a : {0.4, 0.8, 1.0}) {
        for (auto be : {Backend::GammaPowerRule, Backend::FractalMeasure}) {
            const auto d = dist("up", densities::triangular_up(kUnit), a, be);
            EXPECT_NEAR(e_functional(d, [](double) { return 1.0; }, be), cdf_alpha(d, 1.0, be).value,
                        1e-12);
        }
    }
}

TEST(ExpectationIdentity, ZeroAtAlphaOne) {
    const QuadratureSpec quad{64, 8, 1e-9};
    for (const auto& d : {densities::uniform(kUnit), densities::triangular_up(kUnit),
                          densities::triangular_down(kUnit)}) {
        const auto ds = dist("d", d);
        EXPECT_LE(std::abs(expectation_identity_residual(ds, Backend::GammaPowerRule, quad)), 1e-10);
    }
}

TEST(ExpectationIdentity, ReportedForFractionalOrder) {
    const QuadratureSpec quad{64, 8, 1e-9};
    const auto ds = dist("uniform", densities::uniform(kUnit), 0.5);
    EXPECT_TRUE(std::isfinite(expectation_identity_residual(ds, Backend::GammaPowerRule, quad)));
}

TEST(ProbBounds, UniformAndTriangularAtAlphaOne) {
    const auto u = dist("uniform", densities::uniform(kUnit));
    const auto r = prob_theorem_bounds(u, PhiMap::identity(), 0, 1, SParam(1.0), Backend::GammaPowerRule);
    ASSERT_EQ(r.links.size(), 2u);
    EXPECT_NEAR(r.links[0].lhs, 0.5, 1e-12);
    EXPECT_NEAR(r.links[0].rhs, 0.5, 1e-12);
    EXPECT_NEAR(r.links[1].rhs, 0.5, 1e-12);
    EXPECT_TRUE(r.all_pass());

    const auto up = dist("up", densities::triangular_up(kUnit));
    const auto t = prob_theorem_bounds(up, PhiMap::identity(), 0, 1, SParam(1.0), Backend::GammaPowerRule);
    EXPECT_NEAR(t.links[0].lhs, 0.25, 1e-12);
    EXPECT_NEAR(t.links[0].rhs, 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(t.links[1].rhs, 0.5, 1e-12);
    EXPECT_TRUE(t.all_pass());
}

TEST(ProbBounds, PFunctionCase) {
    const auto u = dist("uniform", densities::uniform(kUnit));
    const auto r = prob_theorem_bounds(u, PhiMap::identity(), 0, 1, SParam(0.0), Backend::GammaPowerRule);
    EXPECT_NEAR(r.links[0].lhs, 0.25, 1e-12);
    EXPECT_NEAR(r.links[0].rhs, 0.5, 1e-12);
    EXPECT_NEAR(r.links[1].rhs, 1.0, 1e-12);
}

TEST(ProbBounds, NotesRecordHypotheses) {
    const auto up = dist("up", densities::triangular_up(kUnit));
    const auto r = prob_theorem_bounds(up, PhiMap::identity(), 0, 1, SParam(1.0), Backend::GammaPowerRule);
    bool saw_range = false;
    for (const auto& n : r.notes) saw_range |= n.find("density range within [0,1]: no") != std::string::npos;
    EXPECT_TRUE(saw_range);

    const auto bump = dist("bump", [](double x) { return 6 * x * (1 - x); });
    const auto b = prob_theorem_bounds(bump, PhiMap::identity(), 0, 1, SParam(1.0), Backend::GammaPowerRule);
    for (const auto& l : b.links) EXPECT_EQ(l.note, "hypothesis-unverified");
}

TEST(ProbBounds, Errors) {
    const auto u = dist("uniform", densities::uniform(kUnit));
    EXPECT_THROW(prob_theorem_bounds(u, PhiMap::identity(), 1, 0, SParam(1.0), Backend::Classical),
                 DomainError);
    EXPECT_THROW(prob_theorem_bounds(u, PhiMap::identity(), 0, 2, SParam(1.0), Backend::Classical),
                 DomainError);
}
