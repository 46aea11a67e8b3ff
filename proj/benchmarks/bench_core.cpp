#include "selfsim/config.hpp"
#include "selfsim/measure.hpp"
#include "selfsim/overlaps.hpp"

#include <benchmark/benchmark.h>

using namespace selfsim;

static void BM_DeltaDoubling(benchmark::State& state) {
    IFSModel model = preset_model("doubling");
    const unsigned n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_n(model, n));
    }
}
BENCHMARK(BM_DeltaDoubling)->Arg(6)->Arg(10)->Arg(14);

static void BM_MeasureAtoms(benchmark::State& state) {
    IFSModel model = preset_model("overlap-halves");
    const unsigned n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(nu_n(model, n));
    }
}
BENCHMARK(BM_MeasureAtoms)->Arg(4)->Arg(7)->Arg(10);

static void BM_CertifySignGolden(benchmark::State& state) {
    IFSModel model = preset_model("bernoulli-golden");
    const ContextPtr& ctx = model.context();
    // vanishes at the golden ratio: X0^3 + 2 X0^2 - 1 = (X0 + 1)(X0^2 + X0 - 1)
    IntPolynomial zero(2);
    zero.add_term({3, 0}, Int(1));
    zero.add_term({2, 0}, Int(2));
    zero.add_term({0, 0}, Int(-1));
    IntPolynomial nonzero = zero;
    nonzero.add_term({1, 0}, Int(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ctx->certify_sign(zero));
        benchmark::DoNotOptimize(ctx->certify_sign(nonzero));
    }
}
BENCHMARK(BM_CertifySignGolden);

static void BM_OverlapSearchGolden(benchmark::State& state) {
    IFSModel model = preset_model("bernoulli-golden");
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_overlap(model, 3));
    }
}
BENCHMARK(BM_OverlapSearchGolden);

BENCHMARK_MAIN();
