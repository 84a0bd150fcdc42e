#include <cmath>

#include <benchmark/benchmark.h>

#include "hsconv/convexity.hpp"
#include "hsconv/hh_engine.hpp"
#include "hsconv/lf_integral.hpp"
#include "hsconv/special_functions.hpp"

using namespace hsconv;

namespace {

void BM_LfIntegral(benchmark::State& state) {
    const Alpha alpha(0.5);
    const QuadratureSpec quad{static_cast<int>(state.range(0)), 16, 1e-9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(lf_integral([](double x) { return std::exp(x); }, 0.0, 1.0, alpha,
                                             Backend::GammaPowerRule, quad));
    }
}
BENCHMARK(BM_LfIntegral)->Arg(64)->Arg(512);

void BM_MittagLeffler(benchmark::State& state) {
    const Alpha alpha(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(mittag_leffler(alpha, 3.0));
}
BENCHMARK(BM_MittagLeffler);

void BM_Certify(benchmark::State& state) {
    const FractalFn f("x^2", [](double x) { return x * x; }, Alpha(1.0));
    const RhoSpec spec{HFunction::one(), SParam(1.0), Alpha(1.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(certify(f, PhiMap::identity(), spec, Interval{0.0, 1.0}));
    }
}
BENCHMARK(BM_Certify);

void BM_HhChain(benchmark::State& state) {
    const Alpha alpha(0.5);
    const ChainProblem p{FractalFn("exp", [](double x) { return std::exp(x); }, alpha),
                         PhiMap::identity(), RhoSpec{HFunction::one(), SParam(0.5), alpha}};
    for (auto _ : state) benchmark::DoNotOptimize(hh_chain(p));
}
BENCHMARK(BM_HhChain);

}  // namespace
BENCHMARK_MAIN();
