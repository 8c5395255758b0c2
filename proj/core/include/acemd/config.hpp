#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace acemd {

/// How envelope splines are extended past the first/last extremum.
enum class SplineBoundary {
    mirror,  ///< reflect the two outermost extrema about the end samples
    clamp,   ///< pin the end samples to the value of the nearest extremum
};

/// Distribution of the unit-variance noise added in ensemble trials.
enum class NoiseFamily { gaussian, uniform };

enum class Method { emd, eemd, ceemd, ace_emd };

std::string_view to_string(SplineBoundary b) noexcept;
std::string_view to_string(NoiseFamily f) noexcept;
std::string_view to_string(Method m) noexcept;

struct EnsembleConfig {
    /// Noise realizations. Complementary methods run 2N trials.
    std::size_t ensemble_size = 100;
    /// Relative noise scale: multiplies std(x) for EEMD/CEEMD and the pilot
    /// amplitude envelope for ACE-EMD.
    double noise_sigma = 0.2;
    std::uint64_t seed = 42;
    /// 0 selects the automatic policy (sift until the residual is
    /// nonoscillatory).
    std::size_t max_modes = 0;
    std::size_t sift_max_iters = 50;
    /// Cauchy-type stopping threshold on sum((h_prev - h)^2) / sum(h_prev^2).
    double sift_sd_tol = 0.2;
    /// IMF acceptance: interior max |envelope mean| relative to max |imf|.
    double imf_mean_tol = 0.05;
    SplineBoundary spline_boundary = SplineBoundary::mirror;
    NoiseFamily noise = NoiseFamily::gaussian;
    /// Worker threads for ensemble trials; 0 uses the hardware concurrency.
    /// Results do not depend on this value.
    std::size_t threads = 0;

    /// Throws InvalidArgument when a field is out of range.
    void validate() const;
};

}  // namespace acemd
