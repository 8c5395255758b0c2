#include "acemd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "acemd/ensemble.hpp"
#include "acemd/error.hpp"
#include "acemd/fft.hpp"
#include "acemd/parallel.hpp"

namespace acemd {
namespace {

constexpr std::size_t kEdgeMask = 2;
constexpr std::size_t kMinCentralSamples = 8;

void check_length(std::size_t n) {
    if (n < kMinSeriesLength) {
        throw Error(Errc::TooShort, "Hilbert analysis needs at least " + std::to_string(kMinSeriesLength) +
                                        " samples, got " + std::to_string(n));
    }
}

}  // namespace

std::vector<std::complex<double>> analytic_signal(std::span<const double> x) {
    check_length(x.size());
    auto spec = fft::forward(x);
    const std::size_t n = spec.size();
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < n; ++k) {
        if (k < (n + 1) / 2) {
            spec[k] *= 2.0;
        } else if (!(n % 2 == 0 && k == half)) {
            spec[k] = 0.0;
        }
    }
    return fft::inverse(spec);
}

std::vector<double> hilbert_transform(std::span<const double> x) {
    const auto z = analytic_signal(x);
    std::vector<double> out(z.size());
    for (std::size_t t = 0; t < z.size(); ++t) out[t] = z[t].imag();
    return out;
}

TimeSeries hilbert_transform(const TimeSeries& x) { return x.with_values(hilbert_transform(x.values())); }

std::size_t AnalyticMode::valid_count() const noexcept {
    return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), true));
}

AnalyticMode analytic_mode(std::span<const double> c) {
    const auto z = analytic_signal(c);
    const std::size_t n = z.size();
    constexpr double two_pi = 2.0 * std::numbers::pi;

    AnalyticMode m;
    m.amplitude.resize(n);
    m.phase.resize(n);
    m.frequency.resize(n);
    m.energy.resize(n);
    m.valid.assign(n, true);

    double offset = 0.0;
    double prev_raw = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        m.amplitude[t] = std::abs(z[t]);
        m.energy[t] = m.amplitude[t] * m.amplitude[t];
        const double raw = std::arg(z[t]);
        if (t > 0) {
            const double jump = raw - prev_raw;
            if (jump > std::numbers::pi) {
                offset -= two_pi * std::ceil((jump - std::numbers::pi) / two_pi);
            } else if (jump < -std::numbers::pi) {
                offset += two_pi * std::ceil((-jump - std::numbers::pi) / two_pi);
            }
        }
        m.phase[t] = raw + offset;
        prev_raw = raw;
    }

    m.frequency[0] = (m.phase[1] - m.phase[0]) / two_pi;
    m.frequency[n - 1] = (m.phase[n - 1] - m.phase[n - 2]) / two_pi;
    for (std::size_t t = 1; t + 1 < n; ++t) {
        m.frequency[t] = (m.phase[t + 1] - m.phase[t - 1]) / (2.0 * two_pi);
    }

    for (std::size_t t = 0; t < n; ++t) {
        if (t < kEdgeMask || t + kEdgeMask >= n || !(m.frequency[t] > 0.0)) m.valid[t] = false;
    }
    return m;
}

std::vector<SpectrumPoint> hilbert_spectrum(const Decomposition& d) {
    if (d.imfs.empty()) throw Error(Errc::NoModes, "decomposition has no IMFs");
    std::vector<SpectrumPoint> out;
    for (std::size_t j = 0; j < d.imfs.size(); ++j) {
        const auto m = analytic_mode(d.imfs[j]);
        for (std::size_t t = 0; t < m.size(); ++t) {
            if (m.valid[t]) out.push_back({j, t, m.frequency[t], m.energy[t]});
        }
    }
    return out;
}

CentralPoint central_frequency_energy(const AnalyticMode& m) {
    CentralPoint p;
    double max_energy = 0.0;
    for (std::size_t t = 0; t < m.size(); ++t) {
        if (!m.valid[t]) continue;
        ++p.valid_samples;
        max_energy = std::max(max_energy, m.energy[t]);
    }
    if (p.valid_samples < kMinCentralSamples) {
        throw Error(Errc::InsufficientValidSamples,
                    "need " + std::to_string(kMinCentralSamples) + " valid samples, got " +
                        std::to_string(p.valid_samples));
    }
    if (!(max_energy > 0.0)) throw Error(Errc::InsufficientValidSamples, "mode has zero energy");

    const double energy_floor = 1e-12 * max_energy;
    double log_f = 0.0, log_e = 0.0;
    std::size_t energy_samples = 0;
    for (std::size_t t = 0; t < m.size(); ++t) {
        if (!m.valid[t]) continue;
        log_f += std::log(m.frequency[t]);
        if (m.energy[t] < energy_floor) {
            ++p.excluded_energy_samples;
        } else {
            log_e += std::log(m.energy[t]);
            ++energy_samples;
        }
    }
    p.frequency = std::exp(log_f / static_cast<double>(p.valid_samples));
    p.energy = std::exp(log_e / static_cast<double>(energy_samples));
    return p;
}

PowerLawFit power_exponent(std::span<const CentralPoint> points) {
    if (points.size() < 3) throw Error(Errc::TooFewModes, "power-law fit needs at least three modes");
    const auto n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& p : points) {
        if (!(p.frequency > 0.0) || !(p.energy > 0.0)) {
            throw Error(Errc::InvalidArgument, "central frequency and energy must be positive");
        }
        mx += std::log(p.frequency);
        my += std::log(p.energy);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : points) {
        const double dx = std::log(p.frequency) - mx;
        const double dy = std::log(p.energy) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw Error(Errc::DegenerateFit, "all central frequencies are equal");

    PowerLawFit fit;
    const double slope = sxy / sxx;
    fit.alpha = -slope;
    fit.intercept = my - slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.points = points.size();
    return fit;
}

SpectrumSummary summarize_spectrum(const Decomposition& d) {
    SpectrumSummary s;
    for (std::size_t j = 0; j < d.imfs.size(); ++j) {
        try {
            s.modes.push_back({j, central_frequency_energy(analytic_mode(d.imfs[j]))});
        } catch (const Error& e) {
            if (e.code() != Errc::InsufficientValidSamples) throw;
            s.skipped_modes.push_back(j);
        }
    }
    if (s.modes.size() >= 3) {
        std::vector<CentralPoint> pts;
        for (const auto& m : s.modes) pts.push_back(m.central);
        try {
            s.fit = power_exponent(pts);
        } catch (const Error& e) {
            if (e.code() != Errc::DegenerateFit) throw;
        }
    }
    return s;
}

double frequency_deviation(const SpectrumSummary& s1, const SpectrumSummary& s2) {
    if (s1.modes.size() != s2.modes.size()) {
        throw Error(Errc::ModeCountMismatch, std::to_string(s1.modes.size()) + " vs " +
                                                 std::to_string(s2.modes.size()) + " modes");
    }
    double dev = 0.0;
    for (std::size_t j = 0; j < s1.modes.size(); ++j) {
        if (s1.modes[j].mode != s2.modes[j].mode) {
            throw Error(Errc::ModeCountMismatch, "summaries cover different mode indices");
        }
        const double diff = std::log(s1.modes[j].central.frequency) - std::log(s2.modes[j].central.frequency);
        dev += diff * diff;
    }
    return dev;
}

std::uint64_t window_seed(std::uint64_t seed, std::size_t window_index) noexcept {
    return seed ^ (static_cast<std::uint64_t>(window_index) * 0x9E3779B97F4A7C15ULL);
}

std::vector<RollingSpectrumPoint> rolling_spectrum(const TimeSeries& x, std::size_t window, std::size_t step,
                                                   const EnsembleConfig& cfg) {
    if (window < kMinSpectrumWindow) {
        throw Error(Errc::InvalidArgument, "spectrum window must be >= " + std::to_string(kMinSpectrumWindow));
    }
    if (step < 1) throw Error(Errc::InvalidArgument, "spectrum step must be >= 1");
    if (x.size() < window) {
        throw Error(Errc::TooShort, "series of length " + std::to_string(x.size()) + " shorter than window " +
                                        std::to_string(window));
    }
    cfg.validate();

    const std::size_t count = (x.size() - window) / step + 1;
    std::vector<RollingSpectrumPoint> out(count);
    const auto values = x.values();

    // Windows run in parallel; each window's ensemble then runs serially.
    auto window_cfg = cfg;
    if (count > 1) window_cfg.threads = 1;

    parallel_for(count, cfg.threads, [&](std::size_t w) {
        auto& p = out[w];
        p.window_index = w;
        p.window_end = w * step + window - 1;
        auto wcfg = window_cfg;
        wcfg.seed = window_seed(cfg.seed, w);
        const auto slice = values.subspan(w * step, window);
        try {
            const TimeSeries ws(std::vector<double>(slice.begin(), slice.end()), x.start_time(), x.step(),
                                x.label());
            p.summary = summarize_spectrum(ace_emd(ws, wcfg).decomposition);
        } catch (const Error& e) {
            p.error = e.what();
        }
    });
    return out;
}

}  // namespace acemd
