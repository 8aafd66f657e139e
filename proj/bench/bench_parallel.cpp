// Parallel kernels against their serial references.
#include "dersched/batch.hpp"
#include "dersched/scenario_io.hpp"
#include "oracle.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

using namespace dersched;

namespace
{
    std::vector<Scenario>
    Sweep(std::size_t n)
    {
        std::vector<std::uint64_t> seeds(n);
        std::iota(seeds.begin(), seeds.end(), 1);
        return SeedSweep(LoadScenario("table1_summer"), seeds);
    }

    DispatchProblem
    FourDer()
    {
        DispatchProblem p;
        for (int i = 0; i < 4; ++i)
        {
            double inv = 60 + 10 * i;
            p.entries.push_back({i + 1, inv, 0.9, 0.9, 0.3 * inv, 0.0, 0.2});
        }
        p.tsrp_kw = 30;
        return p;
    }
}

static void
BM_BatchSerial(benchmark::State& state)
{
    auto scenarios = Sweep(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(RunBatchSerial(scenarios));
    }
}
BENCHMARK(BM_BatchSerial)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

static void
BM_BatchParallel(benchmark::State& state)
{
    auto scenarios = Sweep(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(RunBatch(scenarios));
    }
}
BENCHMARK(BM_BatchParallel)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

static void
BM_OracleSerial(benchmark::State& state)
{
    auto p = FourDer();
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(testing::OracleEnumerate(p, 0.005));
    }
}
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);

static void
BM_OracleParallel(benchmark::State& state)
{
    auto p = FourDer();
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(testing::OracleEnumerateParallel(p, 0.005));
    }
}
BENCHMARK(BM_OracleParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
