#include "acemd/decomposition.hpp"

#include <algorithm>
#include <cmath>

namespace acemd {

TimeSeries Decomposition::imf_series(std::size_t j) const { return source.with_values(imfs.at(j)); }

TimeSeries Decomposition::residual_series() const { return source.with_values(residual); }

std::vector<double> Decomposition::reconstruct() const {
    std::vector<double> sum(residual);
    for (const auto& c : imfs) {
        for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += c[t];
    }
    return sum;
}

double Decomposition::reconstruction_error() const {
    const auto sum = reconstruct();
    const auto x = source.values();
    double err = 0.0, scale = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        err = std::max(err, std::abs(sum[t] - x[t]));
        scale = std::max(scale, std::abs(x[t]));
    }
    return scale > 0.0 ? err / scale : err;
}

}  // namespace acemd
