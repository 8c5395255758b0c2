#include "acemd/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "acemd/emd.hpp"
#include "acemd/error.hpp"
#include "acemd/parallel.hpp"

namespace acemd {
namespace {

constexpr std::size_t kTrialsPerBlock = 4;
constexpr std::size_t kBlocksPerWave = 64;

double sample_std(std::span<const double> x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

void check_entry(const TimeSeries& x, const EnsembleConfig& cfg) {
    cfg.validate();
    if (x.size() < kMinSeriesLength) {
        throw Error(Errc::TooShort, "decomposition needs at least " + std::to_string(kMinSeriesLength) + " samples");
    }
}

// Running sum of trial components. Trials that stop early contribute zero
// IMFs for the modes they lack.
struct Components {
    std::vector<std::vector<double>> imfs;
    std::vector<double> residual;

    explicit Components(std::size_t len) : residual(len, 0.0) {}

    void grow(std::size_t modes) {
        while (imfs.size() < modes) imfs.emplace_back(residual.size(), 0.0);
    }

    void add(const std::vector<std::vector<double>>& other_imfs, const std::vector<double>& other_residual) {
        grow(other_imfs.size());
        for (std::size_t j = 0; j < other_imfs.size(); ++j) {
            auto& dst = imfs[j];
            const auto& src = other_imfs[j];
            for (std::size_t t = 0; t < dst.size(); ++t) dst[t] += src[t];
        }
        for (std::size_t t = 0; t < residual.size(); ++t) residual[t] += other_residual[t];
    }
};

// Common mode count for every trial: max_modes when set, otherwise the
// count of the zero-noise decomposition.
std::size_t aligned_mode_count(std::span<const double> x, const EnsembleConfig& cfg) {
    if (cfg.max_modes > 0) return cfg.max_modes;
    return emd_modes(x, cfg, 0).imfs.size();
}

ModeSet trial_modes(std::span<const double> sig, const EnsembleConfig& cfg, std::size_t modes) {
    if (modes == 0) return {{}, std::vector<double>(sig.begin(), sig.end()), {}};  // 0 would mean unlimited
    return emd_modes(sig, cfg, modes);
}

// Runs all trials and returns ensemble-mean components. Trials are grouped
// into fixed blocks summed in trial order, and blocks are reduced in block
// order, so the floating-point result is independent of the thread count.
Components run_trials(std::span<const double> x, std::span<const double> scale, const EnsembleConfig& cfg,
                      bool complementary) {
    const std::size_t len = x.size();
    const std::size_t modes = aligned_mode_count(x, cfg);
    const std::size_t trials = cfg.ensemble_size;
    const std::size_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;

    Components total(len);
    total.grow(modes);
    for (std::size_t wave = 0; wave < blocks; wave += kBlocksPerWave) {
        const std::size_t wave_blocks = std::min(kBlocksPerWave, blocks - wave);
        std::vector<Components> partial(wave_blocks, Components(0));

        parallel_for(wave_blocks, cfg.threads, [&](std::size_t b) {
            Components acc(len);
            acc.grow(modes);
            std::vector<double> sig(len);
            const std::size_t first = (wave + b) * kTrialsPerBlock;
            const std::size_t last = std::min(trials, first + kTrialsPerBlock);
            for (std::size_t i = first; i < last; ++i) {
                const auto w = trial_noise(scale, cfg.seed, i, cfg.noise);
                for (std::size_t t = 0; t < len; ++t) sig[t] = x[t] + w[t];
                auto plus = trial_modes(sig, cfg, modes);
                acc.add(plus.imfs, plus.residual);
                if (complementary) {
                    for (std::size_t t = 0; t < len; ++t) sig[t] = x[t] - w[t];
                    auto minus = trial_modes(sig, cfg, modes);
                    acc.add(minus.imfs, minus.residual);
                }
            }
            partial[b] = std::move(acc);
        });

        for (const auto& p : partial) total.add(p.imfs, p.residual);
    }

    const double inv = 1.0 / static_cast<double>(complementary ? 2 * trials : trials);
    for (auto& row : total.imfs) {
        for (auto& v : row) v *= inv;
    }
    for (auto& v : total.residual) v *= inv;
    return total;
}

EnsembleResult finish(const TimeSeries& x, Components comps, Method method, const EnsembleConfig& cfg,
                      std::vector<double> noise_scale) {
    EnsembleResult out;
    auto& d = out.decomposition;
    d.source = x;
    d.residual = std::move(comps.residual);
    d.imfs = std::move(comps.imfs);
    d.method = method;
    d.config = cfg;
    out.diagnostics = diagnose(d, cfg.noise_sigma, cfg.ensemble_size);
    out.noise_scale = std::move(noise_scale);
    return out;
}

// sigma = 0: every trial would be emd(x); return it directly so the result
// is bitwise identical to plain EMD.
EnsembleResult collapse(const TimeSeries& x, Method method, const EnsembleConfig& cfg) {
    auto d = emd(x, cfg);
    Components comps(0);
    comps.imfs = std::move(d.imfs);
    comps.residual = std::move(d.residual);
    return finish(x, std::move(comps), method, cfg, std::vector<double>(x.size(), 0.0));
}

EnsembleResult constant_noise_ensemble(const TimeSeries& x, const EnsembleConfig& cfg, Method method,
                                       bool complementary) {
    check_entry(x, cfg);
    if (cfg.noise_sigma == 0.0) return collapse(x, method, cfg);
    const auto values = x.values();
    std::vector<double> scale(x.size(), cfg.noise_sigma * sample_std(values));
    auto comps = run_trials(values, scale, cfg, complementary);
    return finish(x, std::move(comps), method, cfg, std::move(scale));
}

double pearson(std::span<const double> a, std::span<const double> b) {
    const auto n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        ma += a[t];
        mb += b[t];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double da = a[t] - ma, db = b[t] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) noexcept {
    // splitmix64 finalizer
    std::uint64_t z = (seed ^ trial_index) + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<double> trial_noise(std::span<const double> scale, std::uint64_t seed, std::size_t trial_index,
                                NoiseFamily family) {
    std::mt19937_64 rng(trial_seed(seed, trial_index));
    std::vector<double> w(scale.size());
    if (family == NoiseFamily::gaussian) {
        std::normal_distribution<double> dist(0.0, 1.0);
        for (std::size_t t = 0; t < w.size(); ++t) w[t] = scale[t] * dist(rng);
    } else {
        const double half_width = std::sqrt(3.0);
        std::uniform_real_distribution<double> dist(-half_width, half_width);
        for (std::size_t t = 0; t < w.size(); ++t) w[t] = scale[t] * dist(rng);
    }
    return w;
}

std::vector<double> pilot_amplitude(std::span<const double> x, const EnsembleConfig& cfg) {
    const auto pilot = extract_imf(x, cfg).imf;
    const auto maxima = find_extrema(pilot).maxima;
    if (maxima.empty()) throw Error(Errc::InsufficientExtrema, "pilot IMF has no maxima");
    auto amp = envelope(pilot.size(), maxima, cfg.spline_boundary);
    double peak = 0.0;
    for (double v : pilot) peak = std::max(peak, std::abs(v));
    const double floor = 1e-6 * peak;
    for (auto& v : amp) v = std::max(v, floor);
    return amp;
}

TimeSeries pilot_amplitude(const TimeSeries& x, const EnsembleConfig& cfg) {
    return x.with_values(pilot_amplitude(x.values(), cfg));
}

EnsembleResult eemd(const TimeSeries& x, const EnsembleConfig& cfg) {
    return constant_noise_ensemble(x, cfg, Method::eemd, false);
}

EnsembleResult ceemd(const TimeSeries& x, const EnsembleConfig& cfg) {
    return constant_noise_ensemble(x, cfg, Method::ceemd, true);
}

EnsembleResult ace_emd(const TimeSeries& x, const EnsembleConfig& cfg) {
    check_entry(x, cfg);
    if (cfg.noise_sigma == 0.0) return collapse(x, Method::ace_emd, cfg);
    const auto values = x.values();
    auto scale = pilot_amplitude(values, cfg);
    for (auto& v : scale) v *= cfg.noise_sigma;
    auto comps = run_trials(values, scale, cfg, true);
    return finish(x, std::move(comps), Method::ace_emd, cfg, std::move(scale));
}

double orthogonality_index(const Decomposition& d) {
    const auto x = d.source.values();
    if (x.empty()) throw Error(Errc::DegenerateSeries, "empty decomposition");
    double peak = 0.0;
    for (double v : x) peak = std::max(peak, std::abs(v));
    const double cutoff = 1e-12 * peak;

    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (!(std::abs(x[t]) >= cutoff) || x[t] == 0.0) continue;
        // sum_{j != k} c_j c_k = (sum_j c_j)^2 - sum_j c_j^2
        double s = d.residual[t], s2 = d.residual[t] * d.residual[t];
        for (const auto& c : d.imfs) {
            s += c[t];
            s2 += c[t] * c[t];
        }
        total += (s * s - s2) / (x[t] * x[t]);
        ++used;
    }
    if (used == 0) throw Error(Errc::DegenerateSeries, "every sample of x is numerically zero");
    return total / static_cast<double>(used);
}

double separability(const Decomposition& d) {
    std::vector<std::span<const double>> comps(d.imfs.begin(), d.imfs.end());
    comps.emplace_back(d.residual);
    if (comps.size() < 2) throw Error(Errc::TooFewModes, "separability needs at least two components");
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        for (std::size_t k = j + 1; k < comps.size(); ++k) {
            const double r = pearson(comps[j], comps[k]);
            sum += r * r;
            ++pairs;
        }
    }
    return std::sqrt(sum / static_cast<double>(pairs));
}

DecompositionDiagnostics diagnose(const Decomposition& d, double sigma, std::size_t ensemble_size) {
    DecompositionDiagnostics diag;
    diag.sigma_used = sigma;
    diag.ensemble_size_used = ensemble_size;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        diag.orthogonality_index = orthogonality_index(d);
    } catch (const Error&) {
        diag.orthogonality_index = nan;
    }
    diag.separability = d.component_count() >= 2 ? separability(d) : nan;
    return diag;
}

SigmaSelection select_sigma(const TimeSeries& x, std::span<const double> grid, const EnsembleConfig& cfg,
                            double oi_threshold) {
    if (grid.empty()) throw Error(Errc::InvalidArgument, "sigma grid is empty");
    SigmaSelection sel;
    std::exception_ptr first_error;
    for (double sigma : grid) {
        SigmaGridPoint p;
        p.sigma = sigma;
        try {
            auto run_cfg = cfg;
            run_cfg.noise_sigma = sigma;
            const auto r = ace_emd(x, run_cfg);
            p.orthogonality_index = r.diagnostics.orthogonality_index;
            p.separability = r.diagnostics.separability;
            p.ok = std::isfinite(p.orthogonality_index) && std::isfinite(p.separability);
            if (!p.ok) p.error = "diagnostics undefined for this decomposition";
            p.feasible = p.ok && std::abs(p.orthogonality_index) < oi_threshold;
        } catch (const Error& e) {
            p.error = e.what();
            if (!first_error) first_error = std::current_exception();
        }
        sel.grid.push_back(std::move(p));
    }

    const SigmaGridPoint* best = nullptr;
    for (const auto& p : sel.grid) {
        if (p.feasible && (!best || p.separability < best->separability)) best = &p;
    }
    if (!best) {
        sel.constraint_unmet = true;
        for (const auto& p : sel.grid) {
            if (p.ok && (!best || std::abs(p.orthogonality_index) < std::abs(best->orthogonality_index))) best = &p;
        }
    }
    if (!best) {
        if (first_error) std::rethrow_exception(first_error);
        throw Error(Errc::DegenerateSeries, "no sigma grid point produced usable diagnostics");
    }
    sel.sigma = best->sigma;
    return sel;
}

}  // namespace acemd
