#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "acemd/config.hpp"
#include "acemd/decomposition.hpp"
#include "acemd/series.hpp"

namespace acemd {

struct Extremum {
    std::size_t index;
    double value;
};

/// Strict interior local extrema. Indices are increasing and maxima/minima
/// interleave. A flat plateau counts once, at its midpoint (rounded down).
struct ExtremaSet {
    std::vector<Extremum> maxima;
    std::vector<Extremum> minima;

    std::size_t count() const noexcept { return maxima.size() + minima.size(); }
    /// At least two maxima and two minima, enough for one sifting pass.
    bool siftable() const noexcept { return maxima.size() >= 2 && minima.size() >= 2; }
};

ExtremaSet find_extrema(std::span<const double> x);

/// Sign changes; an exact zero takes the sign of the run before it.
std::size_t count_zero_crossings(std::span<const double> x);

/// Cubic-spline envelope through `pts` after boundary extension, evaluated
/// on the grid 0..length-1. Throws InsufficientExtrema when fewer than two
/// knots remain.
std::vector<double> envelope(std::size_t length, std::span<const Extremum> pts,
                             SplineBoundary boundary = SplineBoundary::mirror);

/// (upper + lower) / 2 for a series whose extrema are already known.
std::vector<double> mean_envelope(std::span<const double> h, const ExtremaSet& extrema,
                                  SplineBoundary boundary = SplineBoundary::mirror);

/// One sifting pass: h - (upper + lower) / 2.
std::vector<double> sift_once(std::span<const double> h,
                              SplineBoundary boundary = SplineBoundary::mirror);

/// Counts and envelope-mean measurement used for IMF acceptance.
ImfCheck check_imf(std::span<const double> h, const ExtremaSet& extrema,
                   std::span<const double> mean_env);

struct ImfExtraction {
    std::vector<double> imf;
    SiftReport report;
};

/// Sifts until the SD criterion and the IMF conditions both hold, or
/// `sift_max_iters` passes have run.
ImfExtraction extract_imf(std::span<const double> x, const EnsembleConfig& cfg);

/// Variation below this fraction of max|x| counts as flat when deciding
/// whether a residual still oscillates.
inline constexpr double kFlatTolerance = 1e-12;

/// IMFs, residual and per-IMF sift reports without the TimeSeries wrapper.
struct ModeSet {
    std::vector<std::vector<double>> imfs;
    std::vector<double> residual;
    std::vector<SiftReport> reports;
};

/// Plain EMD on a raw sample vector. Stops once the residual has at most one
/// interior extremum or is flat, or after `mode_limit` IMFs (0 = no limit). The residual is formed by
/// running subtraction, so sum(imfs) + residual telescopes back to x.
ModeSet emd_modes(std::span<const double> x, const EnsembleConfig& cfg, std::size_t mode_limit);

/// Plain empirical mode decomposition honouring cfg.max_modes.
Decomposition emd(const TimeSeries& x, const EnsembleConfig& cfg = {});

}  // namespace acemd
