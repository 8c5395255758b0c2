#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "acemd/config.hpp"
#include "acemd/decomposition.hpp"
#include "acemd/series.hpp"

namespace acemd {

struct DecompositionDiagnostics {
    /// NaN when undefined (every sample skipped).
    double orthogonality_index = 0.0;
    /// NaN when the decomposition has fewer than two components.
    double separability = 0.0;
    double sigma_used = 0.0;
    std::size_t ensemble_size_used = 0;
};

struct EnsembleResult {
    Decomposition decomposition;
    DecompositionDiagnostics diagnostics;
    /// Per-sample standard deviation of the injected noise (before the
    /// random draw). Constant for EEMD/CEEMD, sigma * a_p(t) for ACE-EMD.
    std::vector<double> noise_scale;
};

/// Seed of the private RNG substream for one ensemble trial. Derived from
/// seed XOR trial_index and mixed so that neighbouring trials decorrelate.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) noexcept;

/// Noise realization w(t) = scale(t) * z(t) with z i.i.d. zero-mean,
/// unit-variance draws from `family`. Every ensemble method draws its
/// trial noise through this function.
std::vector<double> trial_noise(std::span<const double> scale, std::uint64_t seed, std::size_t trial_index,
                                NoiseFamily family = NoiseFamily::gaussian);

/// Upper spline envelope of the first IMF of x (the pilot mode), floored at
/// 1e-6 * max|c_p|. Throws InsufficientExtrema for nonoscillatory input.
std::vector<double> pilot_amplitude(std::span<const double> x, const EnsembleConfig& cfg);
TimeSeries pilot_amplitude(const TimeSeries& x, const EnsembleConfig& cfg);

// Mode alignment across trials: every trial stops after n* IMFs, where n* is
// cfg.max_modes if set and otherwise the mode count of the zero-noise EMD of
// x. Trials that end naturally before n* contribute zero IMFs for the modes
// they lack.

/// Ensemble EMD with constant noise std sigma * std(x). The ensemble-mean
/// reconstruction differs from x by the mean added noise.
EnsembleResult eemd(const TimeSeries& x, const EnsembleConfig& cfg);

/// Complementary EEMD: each noise draw is used with both signs, so the
/// ensemble mean reconstructs x exactly.
EnsembleResult ceemd(const TimeSeries& x, const EnsembleConfig& cfg);

/// Adaptive complementary ensemble EMD. Noise variance follows
/// sigma^2 * a_p(t)^2 where a_p is the pilot amplitude envelope.
EnsembleResult ace_emd(const TimeSeries& x, const EnsembleConfig& cfg);

/// (1/T) sum_t sum_{j != k} c_j(t) c_k(t) / x(t)^2 over IMFs plus residual.
/// Samples with |x(t)| < 1e-12 max|x| are skipped; throws DegenerateSeries
/// if every sample is skipped.
double orthogonality_index(const Decomposition& d);

/// Root-mean-square Pearson correlation over unordered pairs of components
/// (IMFs plus residual). Constant components correlate 0. Throws
/// TooFewModes with fewer than two components.
double separability(const Decomposition& d);

DecompositionDiagnostics diagnose(const Decomposition& d, double sigma, std::size_t ensemble_size);

inline constexpr std::array<double, 6> kDefaultSigmaGrid{0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
inline constexpr double kDefaultOiThreshold = 0.05;

struct SigmaGridPoint {
    double sigma = 0.0;
    bool ok = false;  ///< decomposition succeeded
    double orthogonality_index = 0.0;
    double separability = 0.0;
    bool feasible = false;  ///< ok and |OI| below the threshold
    std::string error;
};

struct SigmaSelection {
    double sigma = 0.0;
    /// No grid point met the OI constraint; sigma minimizes |OI| instead.
    bool constraint_unmet = false;
    std::vector<SigmaGridPoint> grid;
};

/// Grid search for the ACE-EMD noise level: minimal separability subject to
/// |OI| < oi_threshold. All grid points share cfg.seed. Failing points are
/// recorded and skipped; throws InvalidArgument if the grid is empty and
/// rethrows the first failure if no point succeeds.
SigmaSelection select_sigma(const TimeSeries& x, std::span<const double> grid, const EnsembleConfig& cfg,
                            double oi_threshold = kDefaultOiThreshold);

}  // namespace acemd
