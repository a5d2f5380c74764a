#include "hcube/cube.hpp"
#include "hcube/random.hpp"
#include "hcube/toric.hpp"

#include <benchmark/benchmark.h>

using namespace hcube;

namespace {

PointSet random_set(int base, int dim, double density, std::uint64_t seed)
{
    const GridParams grid(base, dim);
    Rng rng(seed);
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < grid.size(); ++i)
        if (rng.below(1000) < static_cast<std::uint64_t>(density * 1000))
            idx.push_back(i);
    return PointSet(grid, std::move(idx));
}

void BM_MValue(benchmark::State& state)
{
    const auto s = random_set(2, static_cast<int>(state.range(0)), 0.5, 7);
    SearchOptions opts;
    opts.threads = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(m_value(s, kDefaultNotion, opts).m);
}
BENCHMARK(BM_MValue)->Args({6, 1})->Args({6, 0})->Args({8, 1})->Args({8, 0})->Unit(benchmark::kMillisecond);

void BM_MValueOracle(benchmark::State& state)
{
    const auto s = random_set(2, static_cast<int>(state.range(0)), 0.5, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(m_value_oracle(s, kDefaultNotion));
}
BENCHMARK(BM_MValueOracle)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

ToricCode triangle_code()
{
    return build_code(LatticePolytope(2, {{0, 0}, {2, 0}, {0, 2}}), 7);
}

void BM_MinDistance(benchmark::State& state)
{
    const auto code = triangle_code();
    for (auto _ : state)
        benchmark::DoNotOptimize(minimum_distance(code, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MinDistance)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_MinDistanceSerial(benchmark::State& state)
{
    const auto code = triangle_code();
    for (auto _ : state)
        benchmark::DoNotOptimize(minimum_distance_serial(code));
}
BENCHMARK(BM_MinDistanceSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
