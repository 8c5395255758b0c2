#include "acemd/series.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "acemd/error.hpp"

namespace acemd {

TimeSeries::TimeSeries(std::vector<double> values, Timestamp start_time, double step,
                       std::string label)
    : values_(std::move(values)), start_time_(start_time), step_(step), label_(std::move(label)) {
    if (!(step_ > 0.0) || !std::isfinite(step_)) {
        throw Error(Errc::InvalidArgument, "sampling step must be positive and finite");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(Errc::NonFiniteValue, "value at index " + std::to_string(i) + " is not finite");
        }
    }
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
    return TimeSeries(std::move(values), start_time_, step_, label_);
}

TimeSeries validate_series(std::span<const Observation> raw, GapPolicy policy, std::string label) {
    if (raw.empty()) {
        throw Error(Errc::EmptyInput, "no observations");
    }
    std::vector<Observation> obs(raw.begin(), raw.end());
    std::stable_sort(obs.begin(), obs.end(),
                     [](const Observation& a, const Observation& b) { return a.time < b.time; });

    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (!std::isfinite(obs[i].value)) {
            throw Error(Errc::NonFiniteValue,
                        "observation at time " + std::to_string(obs[i].time) + " is not finite");
        }
        if (i > 0 && obs[i].time == obs[i - 1].time) {
            throw Error(Errc::DuplicateDate, "duplicate timestamp " + std::to_string(obs[i].time));
        }
    }
    if (obs.size() < kMinSeriesLength) {
        throw Error(Errc::TooShort, "need at least " + std::to_string(kMinSeriesLength) +
                                        " observations, got " + std::to_string(obs.size()));
    }

    double step = 1.0;
    if (policy == GapPolicy::calendar) {
        const Timestamp delta = obs[1].time - obs[0].time;
        for (std::size_t i = 2; i < obs.size(); ++i) {
            if (obs[i].time - obs[i - 1].time != delta) {
                throw Error(Errc::NonUniformSampling,
                            "spacing changes at time " + std::to_string(obs[i].time));
            }
        }
        step = static_cast<double>(delta);
    }

    std::vector<double> values;
    values.reserve(obs.size());
    for (const auto& o : obs) values.push_back(o.value);
    return TimeSeries(std::move(values), obs.front().time, step, std::move(label));
}

TimeSeries log_transform(const TimeSeries& prices) {
    std::vector<double> out(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) {
        const double p = prices[i];
        if (!(p > 0.0)) {
            throw Error(Errc::NonPositivePrice, "price at index " + std::to_string(i) + " is not positive");
        }
        out[i] = std::log(p);
    }
    return prices.with_values(std::move(out));
}

}  // namespace acemd
