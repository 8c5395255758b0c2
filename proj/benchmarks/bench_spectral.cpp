#include <benchmark/benchmark.h>

#include <acemd/emd.hpp>
#include <acemd/spectral.hpp>

#include "signals.hpp"

namespace {

void BM_HilbertTransform(benchmark::State& state) {
    const auto x = bench::noisy_two_tone(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(acemd::hilbert_transform(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
// Powers of two and a prime length, which takes FFTW's slow path.
BENCHMARK(BM_HilbertTransform)->RangeMultiplier(4)->Range(256, 65536)->Arg(4099);

void BM_SummarizeSpectrum(benchmark::State& state) {
    const acemd::TimeSeries x(bench::noisy_two_tone(static_cast<std::size_t>(state.range(0))));
    const auto d = acemd::emd(x, acemd::EnsembleConfig{});
    for (auto _ : state) benchmark::DoNotOptimize(acemd::summarize_spectrum(d));
}
BENCHMARK(BM_SummarizeSpectrum)->RangeMultiplier(4)->Range(1024, 16384)->Unit(benchmark::kMicrosecond);

}  // namespace
