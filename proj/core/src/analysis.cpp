#include "acemd/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "acemd/error.hpp"

namespace acemd {
namespace {

void check_index(const Decomposition& d, std::size_t m) {
    const std::size_t total = d.component_count();
    if (m < 1 || m > total) {
        throw Error(Errc::IndexOutOfRange,
                    "component count " + std::to_string(m) + " outside [1, " + std::to_string(total) + "]");
    }
}

void check_window(std::size_t size, std::size_t window) {
    if (window < 2) throw Error(Errc::InvalidArgument, "rolling window must be >= 2");
    if (size < window) {
        throw Error(Errc::TooShort, "series of length " + std::to_string(size) + " shorter than window " +
                                        std::to_string(window));
    }
}

}  // namespace

FilteredSeries low_pass(const Decomposition& d, std::size_t m_l) {
    check_index(d, m_l);
    const auto x = d.source.values();
    std::vector<double> out(x.begin(), x.end());
    const std::size_t removed = d.mode_count() + 1 - m_l;
    for (std::size_t j = 0; j < removed; ++j) {
        for (std::size_t t = 0; t < out.size(); ++t) out[t] -= d.imfs[j][t];
    }
    return {d.source.with_values(std::move(out)), FilterKind::low_pass, m_l, d.mode_count(), d.method};
}

FilteredSeries high_pass(const Decomposition& d, std::size_t m_h) {
    check_index(d, m_h);
    std::vector<double> out(d.source.size(), 0.0);
    const std::size_t n = d.mode_count();
    for (std::size_t j = 0; j < m_h; ++j) {
        const auto& c = j < n ? d.imfs[j] : d.residual;
        for (std::size_t t = 0; t < out.size(); ++t) out[t] += c[t];
    }
    return {d.source.with_values(std::move(out)), FilterKind::high_pass, m_h, n, d.method};
}

TimeSeries log_returns(const TimeSeries& x) {
    if (x.size() < 2) throw Error(Errc::TooShort, "returns need at least two samples");
    std::vector<double> r(x.size() - 1);
    for (std::size_t t = 1; t < x.size(); ++t) r[t - 1] = x[t] - x[t - 1];
    return x.with_values(std::move(r));
}

double mean(std::span<const double> r) {
    if (r.empty()) throw Error(Errc::EmptyInput, "mean of an empty sequence");
    double s = 0.0;
    for (double v : r) s += v;
    return s / static_cast<double>(r.size());
}

double volatility(std::span<const double> r) {
    if (r.size() < 2) throw Error(Errc::TooShort, "volatility needs at least two returns");
    // The rounded mean of equal values can differ from them in the last bit.
    if (std::all_of(r.begin(), r.end(), [&](double v) { return v == r[0]; })) return 0.0;
    const double mu = mean(r);
    double ss = 0.0;
    for (double v : r) ss += (v - mu) * (v - mu);
    return std::sqrt(ss / static_cast<double>(r.size() - 1));
}

std::vector<double> rolling_volatility(std::span<const double> r, std::size_t window) {
    check_window(r.size(), window);
    std::vector<double> out(r.size() - window + 1);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = volatility(r.subspan(k, window));
    return out;
}

ConditionalVolatility conditional_volatility(std::span<const double> r) {
    if (r.size() < 3) throw Error(Errc::InsufficientConditionalSamples, "conditional volatility needs >= 3 returns");
    const double mu = mean(r);
    std::vector<double> up, down;
    for (std::size_t t = 1; t < r.size(); ++t) {
        if (r[t - 1] > mu) {
            up.push_back(r[t]);
        } else if (r[t - 1] < mu) {
            down.push_back(r[t]);
        }
    }
    if (up.size() < 2 || down.size() < 2) {
        throw Error(Errc::InsufficientConditionalSamples,
                    "conditioning sets have " + std::to_string(up.size()) + " upside and " +
                        std::to_string(down.size()) + " downside samples");
    }
    return {volatility(up), volatility(down)};
}

std::vector<VolatilityWindow> rolling_conditional_volatility(std::span<const double> r, std::size_t window) {
    check_window(r.size(), window);
    std::vector<VolatilityWindow> out(r.size() - window + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const auto w = r.subspan(k, window);
        auto& o = out[k];
        o.total = volatility(w);
        if (o.total == 0.0) continue;
        try {
            const auto cv = conditional_volatility(w);
            o.up = cv.up;
            o.down = cv.down;
        } catch (const Error&) {
            o.valid = false;
            o.up = o.down = std::nan("");
        }
    }
    return out;
}

AsymmetryFrequencies asymmetry_frequencies(std::span<const VolatilityWindow> rolls, double eps) {
    if (!(eps > 0.0)) throw Error(Errc::InvalidArgument, "asymmetry threshold must be > 0");
    AsymmetryFrequencies f;
    std::size_t plus = 0, minus = 0;
    for (const auto& w : rolls) {
        if (!w.valid) continue;
        ++f.windows;
        const double diff = w.up - w.down;
        if (diff > eps * w.total) {
            ++plus;
        } else if (diff < -eps * w.total) {
            ++minus;
        }
    }
    if (f.windows == 0) throw Error(Errc::EmptyInput, "no valid rolling windows");
    f.p_plus = static_cast<double>(plus) / static_cast<double>(f.windows);
    f.p_minus = static_cast<double>(minus) / static_cast<double>(f.windows);
    return f;
}

}  // namespace acemd
