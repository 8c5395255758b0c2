#pragma once

#include <cstddef>
#include <vector>

#include "acemd/config.hpp"
#include "acemd/series.hpp"

namespace acemd {

/// IMF acceptance measurements for one sifted component.
struct ImfCheck {
    std::size_t num_extrema = 0;
    std::size_t num_zero_crossings = 0;
    /// max |(upper + lower) / 2| over the interior 90% of samples
    double envelope_mean_maxabs = 0.0;
    /// max |imf| over all samples
    double amplitude_maxabs = 0.0;

    bool counts_ok() const noexcept {
        const auto a = num_extrema, b = num_zero_crossings;
        return (a > b ? a - b : b - a) <= 1;
    }
    bool mean_ok(double tol) const noexcept { return envelope_mean_maxabs <= tol * amplitude_maxabs; }
};

struct SiftReport {
    std::size_t iterations_used = 0;
    double sd_final = 0.0;
    ImfCheck imf_check;
};

/// IMFs c_1..c_n (highest frequency first) and residual r_n of a source
/// series. Every component shares the source's time index.
struct Decomposition {
    TimeSeries source;
    std::vector<std::vector<double>> imfs;
    std::vector<double> residual;
    Method method = Method::emd;
    EnsembleConfig config;
    /// One report per IMF; filled by plain EMD only.
    std::vector<SiftReport> sift_reports;

    std::size_t mode_count() const noexcept { return imfs.size(); }
    /// IMFs plus the residual.
    std::size_t component_count() const noexcept { return imfs.size() + 1; }

    TimeSeries imf_series(std::size_t j) const;
    TimeSeries residual_series() const;

    /// Sum of all IMFs and the residual.
    std::vector<double> reconstruct() const;
    /// max_t |reconstruct - source| / max_t |source| (absolute error when the
    /// source is identically zero).
    double reconstruction_error() const;
};

}  // namespace acemd
