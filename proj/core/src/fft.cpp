#include "acemd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace acemd::fft {
namespace {

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer make_buffer(std::size_t n) { return Buffer(fftw_alloc_complex(n)); }

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are built once per (size, direction) with FFTW_ESTIMATE, which
// makes the chosen algorithm (and hence the rounding) reproducible.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        auto in = make_buffer(static_cast<std::size_t>(n));
        auto out = make_buffer(static_cast<std::size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, in.get(), out.get(), sign, FFTW_ESTIMATE);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [key, p] : plans_) fftw_destroy_plan(p);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

std::vector<std::complex<double>> run(const fftw_complex* src, std::size_t n, int sign) {
    auto in = make_buffer(n);
    auto out = make_buffer(n);
    for (std::size_t i = 0; i < n; ++i) {
        in[i][0] = src[i][0];
        in[i][1] = src[i][1];
    }
    fftw_execute_dft(cache().get(static_cast<int>(n), sign), in.get(), out.get());
    std::vector<std::complex<double>> result(n);
    for (std::size_t i = 0; i < n; ++i) result[i] = {out[i][0], out[i][1]};
    return result;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const double> x) {
    if (x.empty()) return {};
    std::vector<std::complex<double>> z(x.begin(), x.end());
    return run(reinterpret_cast<const fftw_complex*>(z.data()), z.size(), FFTW_FORWARD);
}

std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> spectrum) {
    if (spectrum.empty()) return {};
    auto out = run(reinterpret_cast<const fftw_complex*>(spectrum.data()), spectrum.size(), FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace acemd::fft
