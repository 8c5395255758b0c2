#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "acemd/config.hpp"
#include "acemd/decomposition.hpp"
#include "acemd/error.hpp"
#include "acemd/series.hpp"

using namespace acemd;

namespace {

template <class F>
Errc code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no acemd::Error thrown";
    return Errc::InvalidArgument;
}

std::vector<Observation> daily(std::size_t n, Timestamp start = 16804) {
    std::vector<Observation> obs;
    for (std::size_t i = 0; i < n; ++i) obs.push_back({start + Timestamp(i), 100.0 + double(i)});
    return obs;
}

}  // namespace

TEST(Error, MessageCarriesCodeName) {
    const Error e(Errc::TooShort, "need 8");
    EXPECT_EQ(e.code(), Errc::TooShort);
    EXPECT_EQ(std::string(e.what()), "TooShort: need 8");
    EXPECT_EQ(errc_name(Errc::DuplicateDate), "DuplicateDate");
}

TEST(ValidateSeries, TenDailyCloses) {
    const auto obs = daily(10);
    const TimeSeries ts = validate_series(obs);
    EXPECT_EQ(ts.size(), 10u);
    EXPECT_EQ(ts.step(), 1.0);
    EXPECT_EQ(ts.start_time(), 16804);
    EXPECT_EQ(ts[3], 103.0);
}

TEST(ValidateSeries, RejectsNaN) {
    auto obs = daily(10);
    obs[4].value = std::numeric_limits<double>::quiet_NaN();
    EXPECT_EQ(code_of([&] { validate_series(obs); }), Errc::NonFiniteValue);
    obs[4].value = std::numeric_limits<double>::infinity();
    EXPECT_EQ(code_of([&] { validate_series(obs); }), Errc::NonFiniteValue);
}

TEST(ValidateSeries, TooShort) {
    EXPECT_EQ(code_of([] { validate_series(daily(5)); }), Errc::TooShort);
    EXPECT_EQ(code_of([] { validate_series(std::vector<Observation>{}); }), Errc::EmptyInput);
    EXPECT_NO_THROW(validate_series(daily(8)));
}

TEST(ValidateSeries, SortsAndRejectsDuplicates) {
    auto obs = daily(12);
    auto shuffled = obs;
    std::mt19937 g(7);
    std::shuffle(shuffled.begin(), shuffled.end(), g);
    const auto a = validate_series(obs), b = validate_series(shuffled);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);

    shuffled.push_back(obs[3]);
    EXPECT_EQ(code_of([&] { validate_series(shuffled); }), Errc::DuplicateDate);
}

TEST(ValidateSeries, GapPolicy) {
    // Weekday-only data: a weekend gap every five observations.
    std::vector<Observation> obs;
    for (int i = 0; i < 20; ++i) obs.push_back({Timestamp(i + 2 * (i / 5)), 1.0 + i});
    EXPECT_EQ(validate_series(obs, GapPolicy::observation_index).size(), 20u);
    EXPECT_EQ(code_of([&] { validate_series(obs, GapPolicy::calendar); }), Errc::NonUniformSampling);

    std::vector<Observation> weekly;
    for (int i = 0; i < 10; ++i) weekly.push_back({Timestamp(7 * i), 1.0});
    EXPECT_EQ(validate_series(weekly, GapPolicy::calendar).step(), 7.0);
}

TEST(TimeSeries, ConstructorContract) {
    EXPECT_EQ(code_of([] { TimeSeries({1.0, NAN}); }), Errc::NonFiniteValue);
    EXPECT_EQ(code_of([] { TimeSeries({1.0}, 0, 0.0); }), Errc::InvalidArgument);
    const TimeSeries ts({1, 2, 3}, 5, 2.0, "x");
    const auto u = ts.with_values({4, 5, 6});
    EXPECT_EQ(u.start_time(), 5);
    EXPECT_EQ(u.step(), 2.0);
    EXPECT_EQ(u.label(), "x");
    EXPECT_EQ(u[2], 6.0);
}

TEST(LogTransform, Examples) {
    const auto zero = log_transform(TimeSeries(std::vector<double>(10, 1.0)));
    for (double v : zero.values()) EXPECT_EQ(v, 0.0);

    std::vector<double> e;
    for (int t = 0; t < 10; ++t) e.push_back(std::exp(double(t)));
    const auto lin = log_transform(TimeSeries(e, 3, 1.0));
    EXPECT_EQ(lin.start_time(), 3);
    for (int t = 0; t < 10; ++t) EXPECT_NEAR(lin[t], double(t), 1e-14);

    EXPECT_EQ(code_of([] { log_transform(TimeSeries({1, 2, 0, 3})); }), Errc::NonPositivePrice);
    EXPECT_EQ(code_of([] { log_transform(TimeSeries({1, -2})); }), Errc::NonPositivePrice);
}

TEST(LogTransform, InvertsExpProperty) {
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> x(64), ex(64);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = u(g);
            ex[i] = std::exp(x[i]);
        }
        const auto back = log_transform(TimeSeries(ex));
        for (std::size_t i = 0; i < x.size(); ++i) {
            EXPECT_NEAR(back[i], x[i], 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x[i])));
        }
    }
}

TEST(EnsembleConfig, Validate) {
    EnsembleConfig c;
    EXPECT_NO_THROW(c.validate());
    c.ensemble_size = 0;
    EXPECT_EQ(code_of([&] { c.validate(); }), Errc::InvalidArgument);
    c = {};
    c.noise_sigma = -0.1;
    EXPECT_EQ(code_of([&] { c.validate(); }), Errc::InvalidArgument);
    c = {};
    c.sift_max_iters = 0;
    EXPECT_EQ(code_of([&] { c.validate(); }), Errc::InvalidArgument);
    c = {};
    c.sift_sd_tol = 0.0;
    EXPECT_EQ(code_of([&] { c.validate(); }), Errc::InvalidArgument);
}

TEST(Decomposition, ReconstructAndAccessors) {
    Decomposition d;
    d.source = TimeSeries({1, 2, 3, 4}, 100, 1.0, "s");
    d.imfs = {{0.5, -0.5, 0.5, -0.5}, {0.25, 0.25, -0.25, -0.25}};
    d.residual = {0.25, 2.25, 2.75, 4.75};
    EXPECT_EQ(d.mode_count(), 2u);
    EXPECT_EQ(d.component_count(), 3u);
    const auto r = d.reconstruct();
    for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(r[i], d.source[i]);
    EXPECT_DOUBLE_EQ(d.reconstruction_error(), 0.0);
    EXPECT_EQ(d.imf_series(1).start_time(), 100);
    EXPECT_EQ(d.residual_series()[1], 2.25);
}
