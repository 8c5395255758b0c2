#include "acemd/config.hpp"

#include <cmath>

#include "acemd/error.hpp"

namespace acemd {

std::string_view to_string(SplineBoundary b) noexcept {
    return b == SplineBoundary::mirror ? "mirror" : "clamp";
}

std::string_view to_string(NoiseFamily f) noexcept {
    return f == NoiseFamily::gaussian ? "gaussian" : "uniform";
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::emd: return "EMD";
        case Method::eemd: return "EEMD";
        case Method::ceemd: return "CEEMD";
        case Method::ace_emd: return "ACE-EMD";
    }
    return "?";
}

void EnsembleConfig::validate() const {
    if (ensemble_size < 1) throw Error(Errc::InvalidArgument, "ensemble_size must be >= 1");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw Error(Errc::InvalidArgument, "noise_sigma must be finite and >= 0");
    }
    if (sift_max_iters < 1) throw Error(Errc::InvalidArgument, "sift_max_iters must be >= 1");
    if (!(sift_sd_tol > 0.0)) throw Error(Errc::InvalidArgument, "sift_sd_tol must be > 0");
    if (!(imf_mean_tol > 0.0)) throw Error(Errc::InvalidArgument, "imf_mean_tol must be > 0");
}

}  // namespace acemd
