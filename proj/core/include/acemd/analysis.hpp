#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "acemd/config.hpp"
#include "acemd/decomposition.hpp"
#include "acemd/series.hpp"

namespace acemd {

enum class FilterKind { low_pass, high_pass };

/// A reconstruction from a subset of components. `components_used` counts
/// the residual when it is included.
struct FilteredSeries {
    TimeSeries values;
    FilterKind kind = FilterKind::low_pass;
    std::size_t components_used = 0;
    std::size_t source_mode_count = 0;
    Method source_method = Method::emd;
};

/// x - sum_{j=1}^{n-m_l+1} c_j. Requires 1 <= m_l <= n+1 (IndexOutOfRange).
FilteredSeries low_pass(const Decomposition& d, std::size_t m_l);

/// sum_{j=1}^{m_h} c_j; m_h = n+1 adds the residual. Requires 1 <= m_h <= n+1.
FilteredSeries high_pass(const Decomposition& d, std::size_t m_h);

/// r(t) = x(t) - x(t-1). Output sample k belongs to input sample k+1; the
/// time index metadata is copied unchanged. Throws TooShort below two samples.
TimeSeries log_returns(const TimeSeries& x);
inline TimeSeries log_returns(const FilteredSeries& f) { return log_returns(f.values); }

double mean(std::span<const double> r);

/// Sample standard deviation with the T-1 denominator. Throws TooShort below
/// two samples.
double volatility(std::span<const double> r);

/// Trailing-window volatility indexed at the window end; length T-window+1.
std::vector<double> rolling_volatility(std::span<const double> r, std::size_t window);

struct ConditionalVolatility {
    double up = 0.0;    ///< std of r(t) given r(t-1) > mean
    double down = 0.0;  ///< std of r(t) given r(t-1) < mean
};

/// Upside/downside conditional volatilities about the full-window mean.
/// Ties r(t-1) == mean fall in neither set. Throws
/// InsufficientConditionalSamples when either set has fewer than two samples.
ConditionalVolatility conditional_volatility(std::span<const double> r);

/// One rolling window's conditional and unconditional volatilities.
/// `valid` is false when a conditioning set was too small.
struct VolatilityWindow {
    double up = 0.0;
    double down = 0.0;
    double total = 0.0;
    bool valid = true;
};

/// conditional_volatility and volatility on each trailing window, with the
/// mean recomputed per window. A window with zero volatility reports zeros.
std::vector<VolatilityWindow> rolling_conditional_volatility(std::span<const double> r, std::size_t window);

struct AsymmetryFrequencies {
    double p_plus = 0.0;   ///< fraction with up - down >  eps * total
    double p_minus = 0.0;  ///< fraction with up - down < -eps * total
    std::size_t windows = 0;
};

/// Frequencies of upside/downside volatility-asymmetry events over the valid
/// windows. Throws EmptyInput when no valid window exists and
/// InvalidArgument for eps <= 0.
AsymmetryFrequencies asymmetry_frequencies(std::span<const VolatilityWindow> rolls, double eps);

inline constexpr std::size_t kThreeMonthWindow = 63;
inline constexpr std::size_t kTwoYearWindow = 504;
inline constexpr double kDefaultAsymmetryEpsilon = 0.05;

}  // namespace acemd
