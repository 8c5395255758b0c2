#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace acemd {

/// Integer time stamp. Daily data uses days since 1970-01-01.
using Timestamp = std::int64_t;

/// Shortest series accepted at decomposition entry.
inline constexpr std::size_t kMinSeriesLength = 8;

struct Observation {
    Timestamp time;
    double value;
};

/// How timestamps map onto the sampling grid.
///
/// `observation_index` treats the observed sequence as uniformly sampled in
/// trading time (step = one observation), so weekends and holidays are not
/// gaps. `calendar` requires the timestamps themselves to be equally spaced.
enum class GapPolicy { observation_index, calendar };

/// Uniformly sampled, finite-valued observations. Immutable once built.
class TimeSeries {
public:
    TimeSeries() = default;

    /// Throws NonFiniteValue on NaN/inf and InvalidArgument on a
    /// non-positive step. Length is not checked here.
    explicit TimeSeries(std::vector<double> values, Timestamp start_time = 0, double step = 1.0,
                        std::string label = {});

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }

    Timestamp start_time() const noexcept { return start_time_; }
    double step() const noexcept { return step_; }
    const std::string& label() const noexcept { return label_; }

    /// Same time index and label, different values.
    TimeSeries with_values(std::vector<double> values) const;

private:
    std::vector<double> values_;
    Timestamp start_time_ = 0;
    double step_ = 1.0;
    std::string label_;
};

/// Builds a TimeSeries from raw (timestamp, value) pairs. Input is sorted by
/// time; duplicate timestamps, non-finite values and series shorter than
/// kMinSeriesLength are rejected.
TimeSeries validate_series(std::span<const Observation> raw,
                           GapPolicy policy = GapPolicy::observation_index,
                           std::string label = {});

/// Elementwise natural log of a strictly positive price series.
TimeSeries log_transform(const TimeSeries& prices);

}  // namespace acemd
