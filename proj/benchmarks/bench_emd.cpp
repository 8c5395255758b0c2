#include <benchmark/benchmark.h>

#include <acemd/emd.hpp>
#include <acemd/spline.hpp>

#include "signals.hpp"

namespace {

void BM_FindExtrema(benchmark::State& state) {
    const auto x = bench::noisy_two_tone(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(acemd::find_extrema(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FindExtrema)->RangeMultiplier(4)->Range(256, 16384);

void BM_SplineGrid(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = bench::noisy_two_tone(n);
    const auto ext = acemd::find_extrema(x);
    std::vector<double> xs, ys, out(n);
    for (const auto& e : ext.maxima) {
        xs.push_back(static_cast<double>(e.index));
        ys.push_back(e.value);
    }
    for (auto _ : state) {
        acemd::natural_spline_grid(xs, ys, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SplineGrid)->RangeMultiplier(4)->Range(256, 16384);

void BM_Emd(benchmark::State& state) {
    const acemd::TimeSeries x(bench::noisy_two_tone(static_cast<std::size_t>(state.range(0))));
    const acemd::EnsembleConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(acemd::emd(x, cfg));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Emd)->RangeMultiplier(2)->Range(256, 8192)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace
