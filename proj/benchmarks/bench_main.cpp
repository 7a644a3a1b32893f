#include <benchmark/benchmark.h>

#include "chiv/builder.hpp"
#include "chiv/lp.hpp"
#include "chiv/verifier.hpp"
#include "chiv/zero_oracle.hpp"

using namespace chiv;

static void BM_BuildCanonicalEliminated(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        ZeroCache cache;
        BuildStats stats;
        benchmark::DoNotOptimize(build_lhs_canonical(n, true, cache, 1, &stats));
        state.counters["raw"] = static_cast<double>(stats.raw_monomials);
    }
}
BENCHMARK(BM_BuildCanonicalEliminated)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_BuildCanonicalCachedOracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ZeroCache cache;  // shared: later iterations pay no LP cost
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_lhs_canonical(n, true, cache, 1));
    }
}
BENCHMARK(BM_BuildCanonicalCachedOracle)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_ZeroLp(benchmark::State& state) {
    const int n = 5;
    const std::vector<Mask> masks{0b00011, 0b00101, 0b01001, 0b10001, 0b11110};
    const Term t = Term::product(n, masks);
    for (auto _ : state) benchmark::DoNotOptimize(lp_zero_test(t));
}
BENCHMARK(BM_ZeroLp);

static void BM_EnumerateValuations(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        ZeroCache cache;
        const auto vals = enumerate_feasible_valuations(n, cache);
        state.counters["feasible"] = static_cast<double>(vals.valuations.size());
        benchmark::DoNotOptimize(vals);
    }
}
BENCHMARK(BM_EnumerateValuations)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_CancelVerdict(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ZeroCache cache;
    const FormalSum lhs = build_lhs_canonical(n, true, cache);
    const FormalSum rhs = build_rhs(n);
    for (auto _ : state) benchmark::DoNotOptimize(verify_by_cancellation(lhs, rhs, cache));
}
BENCHMARK(BM_CancelVerdict)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
