#include <benchmark/benchmark.h>

#include <acemd/ensemble.hpp>

#include "signals.hpp"

namespace {

// Args: series length, ensemble size. Serial so numbers reflect per-trial cost.
template <acemd::EnsembleResult (*Method)(const acemd::TimeSeries&, const acemd::EnsembleConfig&)>
void BM_Ensemble(benchmark::State& state) {
    const acemd::TimeSeries x(bench::noisy_two_tone(static_cast<std::size_t>(state.range(0))));
    acemd::EnsembleConfig cfg;
    cfg.ensemble_size = static_cast<std::size_t>(state.range(1));
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(Method(x, cfg));
}

#define ACEMD_ENSEMBLE_BENCH(fn)                                                  \
    BENCHMARK(BM_Ensemble<&acemd::fn>)                                            \
        ->Name("BM_" #fn)                                                         \
        ->ArgsProduct({{1024, 4096}, {10, 100}})                                  \
        ->ArgNames({"n", "N"})                                                    \
        ->Unit(benchmark::kMillisecond)

ACEMD_ENSEMBLE_BENCH(eemd);
ACEMD_ENSEMBLE_BENCH(ceemd);
ACEMD_ENSEMBLE_BENCH(ace_emd);

void BM_SelectSigma(benchmark::State& state) {
    const acemd::TimeSeries x(bench::noisy_two_tone(1024));
    acemd::EnsembleConfig cfg;
    cfg.ensemble_size = 20;
    cfg.threads = 1;
    const std::vector<double> grid{0.05, 0.1, 0.2, 0.4};
    for (auto _ : state) benchmark::DoNotOptimize(acemd::select_sigma(x, grid, cfg));
}
BENCHMARK(BM_SelectSigma)->Unit(benchmark::kMillisecond);

}  // namespace
