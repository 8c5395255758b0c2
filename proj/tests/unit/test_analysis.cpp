#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "acemd/analysis.hpp"
#include "acemd/emd.hpp"
#include "acemd/error.hpp"
#include "oracles.hpp"

using namespace acemd;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no acemd::Error thrown";
    return Errc::InvalidArgument;
}

struct TwoTone {
    std::vector<double> fast, slow, trend, x;
    Decomposition d;
};

TwoTone two_tone() {
    TwoTone s;
    const std::size_t n = 1024;
    s.fast = oracle::tone(n, 16);
    s.slow = oracle::tone(n, 128);
    s.trend.resize(n);
    for (std::size_t t = 0; t < n; ++t) s.trend[t] = 0.01 * double(t);
    s.x = oracle::add(oracle::add(s.fast, s.slow), s.trend);
    s.d = emd(TimeSeries(s.x));
    return s;
}

// Returns whose scale doubles on the downside: r(t) = s(t) z(t) with
// s(t) = sqrt(2) after a negative return.
std::vector<double> downside_heavy(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> z;
    std::vector<double> r(n);
    r[0] = z(g);
    for (std::size_t t = 1; t < n; ++t) r[t] = (r[t - 1] < 0 ? std::sqrt(2.0) : 1.0) * z(g);
    return r;
}

}  // namespace

TEST(Filters, EndpointsOfTheRange) {
    const auto s = two_tone();
    const std::size_t n = s.d.mode_count();
    const auto all = low_pass(s.d, n + 1);
    for (std::size_t t = 0; t < s.x.size(); ++t) EXPECT_EQ(all.values[t], s.x[t]);
    const auto res = low_pass(s.d, 1);
    for (std::size_t t = 0; t < s.x.size(); ++t) EXPECT_NEAR(res.values[t], s.d.residual[t], 1e-10 * 10.24);
    const auto h1 = high_pass(s.d, 1);
    EXPECT_EQ(std::vector<double>(h1.values.values().begin(), h1.values.values().end()), s.d.imfs[0]);
    EXPECT_EQ(h1.kind, FilterKind::high_pass);
    EXPECT_EQ(h1.components_used, 1u);
    EXPECT_EQ(h1.source_mode_count, n);
}

TEST(Filters, RecoverTones) {
    const auto s = two_tone();
    EXPECT_GT(oracle::interior_corr(high_pass(s.d, 1).values.values(), s.fast), 0.95);
    const auto slow_trend = oracle::add(s.slow, s.trend);
    const std::size_t n = s.d.mode_count();
    // Keep the slow tone and everything below it: drop only the first IMF.
    EXPECT_GT(oracle::interior_corr(low_pass(s.d, n).values.values(), slow_trend), 0.95);
}

TEST(Filters, LowPassTwoKeepsSlowToneForTwoModeDecomposition) {
    // Exactly two IMFs: m_l = 2 keeps c_2 and the residual.
    const auto s = two_tone();
    EnsembleConfig cfg;
    cfg.max_modes = 2;
    const auto d = emd(TimeSeries(s.x), cfg);
    ASSERT_EQ(d.mode_count(), 2u);
    EXPECT_GT(oracle::interior_corr(low_pass(d, 2).values.values(), oracle::add(s.slow, s.trend)), 0.95);
}

TEST(Filters, ComplementarityAndInclusion) {
    const auto x = oracle::random_walk(800, 4);
    const auto d = emd(TimeSeries(x));
    const std::size_t n = d.mode_count();
    double scale = 0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    for (std::size_t ml = 1; ml <= n; ++ml) {
        const auto lo = low_pass(d, ml), hi = high_pass(d, n + 1 - ml);
        for (std::size_t t = 0; t < x.size(); ++t) EXPECT_NEAR(lo.values[t] + hi.values[t], x[t], 1e-10 * scale);
    }
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t mp = m + 1; mp <= n; ++mp) {
            const auto a = high_pass(d, m), b = high_pass(d, mp);
            for (std::size_t t = 0; t < x.size(); ++t) {
                double extra = 0;
                for (std::size_t j = m; j < mp; ++j) extra += d.imfs[j][t];
                EXPECT_NEAR(a.values[t] + extra, b.values[t], 1e-12 * scale);
            }
        }
    }
}

TEST(Filters, IndexOutOfRange) {
    const auto s = two_tone();
    const std::size_t n = s.d.mode_count();
    EXPECT_EQ(code_of([&] { low_pass(s.d, 0); }), Errc::IndexOutOfRange);
    EXPECT_EQ(code_of([&] { low_pass(s.d, n + 2); }), Errc::IndexOutOfRange);
    EXPECT_EQ(code_of([&] { high_pass(s.d, 0); }), Errc::IndexOutOfRange);
    EXPECT_EQ(code_of([&] { high_pass(s.d, n + 2); }), Errc::IndexOutOfRange);
}

TEST(LogReturns, Examples) {
    const auto zero = log_returns(TimeSeries(std::vector<double>(10, 4.0)));
    EXPECT_EQ(zero.size(), 9u);
    for (double v : zero.values()) EXPECT_EQ(v, 0.0);
    std::vector<double> lin(12);
    for (std::size_t t = 0; t < lin.size(); ++t) lin[t] = 0.25 * double(t);
    const auto rl = log_returns(TimeSeries(lin));
    for (double v : rl.values()) EXPECT_DOUBLE_EQ(v, 0.25);
    const auto r = log_returns(TimeSeries({0, 0.1, 0.3}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_DOUBLE_EQ(r[0], 0.1);
    EXPECT_DOUBLE_EQ(r[1], 0.2);
    EXPECT_EQ(code_of([] { log_returns(TimeSeries({1.0})); }), Errc::TooShort);
}

TEST(Volatility, Examples) {
    EXPECT_EQ(volatility(std::vector<double>(7, 0.3)), 0.0);
    EXPECT_DOUBLE_EQ(volatility(std::vector<double>{-1, 1}), std::sqrt(2.0));
    std::vector<double> alt(1000);
    for (std::size_t t = 0; t < alt.size(); ++t) alt[t] = (t % 2 ? -0.7 : 0.7);
    EXPECT_NEAR(volatility(alt), 0.7 * std::sqrt(1000.0 / 999.0), 1e-14);
    EXPECT_EQ(code_of([] { volatility(std::vector<double>{1.0}); }), Errc::TooShort);
}

TEST(Volatility, ShiftAndScaleProperty) {
    std::mt19937_64 g(2);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int rep = 0; rep < 20; ++rep) {
        auto r = oracle::white_noise(50 + rep, rep);
        const double v = volatility(r), c = u(g), k = u(g);
        auto shifted = r, scaled = r;
        for (auto& x : shifted) x += c;
        for (auto& x : scaled) x *= k;
        EXPECT_NEAR(volatility(shifted), v, 1e-12 * (1 + std::abs(c)));
        EXPECT_NEAR(volatility(scaled), std::abs(k) * v, 1e-12 * (1 + std::abs(k)));
    }
}

TEST(RollingVolatility, Examples) {
    const auto z = rolling_volatility(std::vector<double>(100, 0.01), 63);
    EXPECT_EQ(z.size(), 38u);
    for (double v : z) EXPECT_EQ(v, 0.0);

    const auto r = oracle::white_noise(80, 5);
    const auto full = rolling_volatility(r, r.size());
    ASSERT_EQ(full.size(), 1u);
    EXPECT_DOUBLE_EQ(full[0], volatility(r));

    EXPECT_EQ(code_of([&] { rolling_volatility(r, 81); }), Errc::TooShort);
    EXPECT_EQ(code_of([&] { rolling_volatility(r, 1); }), Errc::InvalidArgument);
}

TEST(RollingVolatility, MonotoneAcrossVarianceBreak) {
    // Alternating returns whose magnitude steps from 1 to 3 at t0.
    const std::size_t t0 = 200, window = 40;
    std::vector<double> r(400);
    for (std::size_t t = 0; t < r.size(); ++t) r[t] = (t % 2 ? -1.0 : 1.0) * (t < t0 ? 1.0 : 3.0);
    const auto v = rolling_volatility(r, window);
    // Output k covers r[k .. k+window-1]; the break enters at k = t0-window+1.
    for (std::size_t k = t0 - window + 1; k <= t0; ++k) EXPECT_GT(v[k], v[k - 1]) << k;
    EXPECT_NEAR(v[t0 - window], 1.0 * std::sqrt(40.0 / 39.0), 1e-12);
    EXPECT_NEAR(v[t0], 3.0 * std::sqrt(40.0 / 39.0), 1e-12);
}

TEST(RollingVolatility, VarianceSumRuleOnFilteredReturns) {
    const auto x = oracle::random_walk(600, 9, 0.02);
    const auto d = emd(TimeSeries(x));
    const std::size_t n = d.mode_count();
    const auto rh = log_returns(high_pass(d, 2)), rl = log_returns(low_pass(d, n - 1));
    const auto r = log_returns(TimeSeries(x));
    const std::size_t w = 63;
    const auto vh = rolling_volatility(rh.values(), w), vl = rolling_volatility(rl.values(), w),
               vt = rolling_volatility(r.values(), w);
    for (std::size_t k = 0; k < vt.size(); ++k) {
        const auto a = rh.values().subspan(k, w), b = rl.values().subspan(k, w);
        const double ma = mean(a), mb = mean(b);
        double cov = 0;
        for (std::size_t t = 0; t < w; ++t) cov += (a[t] - ma) * (b[t] - mb);
        cov /= double(w - 1);
        EXPECT_NEAR(vh[k] * vh[k] + vl[k] * vl[k] + 2 * cov, vt[k] * vt[k], 1e-12);
    }
}

TEST(ConditionalVolatility, SymmetricNull) {
    const auto r = oracle::white_noise(10000, 31);
    const auto cv = conditional_volatility(r);
    EXPECT_LT(std::abs(cv.up - cv.down) / volatility(r), 0.05);
}

TEST(ConditionalVolatility, DownsideDoubledVariance) {
    const auto cv = conditional_volatility(downside_heavy(20000, 4));
    EXPECT_GE(cv.down / cv.up, 1.3);
    EXPECT_LE(cv.down / cv.up, 1.7);
}

TEST(ConditionalVolatility, HandComputed) {
    // mean = 0.5; lagged values above it at t-1 in {0, 2}, below at {1, 3, 4}.
    const std::vector<double> r{2.0, -1.0, 3.0, -2.0, -1.0, 2.0};
    const auto cv = conditional_volatility(r);
    EXPECT_DOUBLE_EQ(cv.up, std::sqrt(0.5));              // {-1, -2}
    EXPECT_DOUBLE_EQ(cv.down, std::sqrt(13.0 / 3.0));     // {3, -1, 2}
}

TEST(ConditionalVolatility, TiesExcludedAndContract) {
    // All lagged values above the mean except one.
    std::vector<double> r(20, 1.0);
    r[10] = -30.0;
    EXPECT_EQ(code_of([&] { conditional_volatility(r); }), Errc::InsufficientConditionalSamples);
}

TEST(RollingConditional, ZeroWindowsAndInvalidWindows) {
    const auto flat = rolling_conditional_volatility(std::vector<double>(70, 0.0), 63);
    for (const auto& w : flat) {
        EXPECT_TRUE(w.valid);
        EXPECT_EQ(w.total, 0.0);
        EXPECT_EQ(w.up, 0.0);
        EXPECT_EQ(w.down, 0.0);
    }
    std::vector<double> spiky(70, 1.0);
    spiky[30] = -50.0;
    const auto rolls = rolling_conditional_volatility(spiky, 63);
    for (const auto& w : rolls) EXPECT_FALSE(w.valid);
    EXPECT_EQ(code_of([&] { asymmetry_frequencies(rolls, 0.05); }), Errc::EmptyInput);
}

TEST(RollingConditional, MatchesPerWindowCall) {
    const auto r = downside_heavy(300, 8);
    const auto rolls = rolling_conditional_volatility(r, 63);
    ASSERT_EQ(rolls.size(), 300u - 63u + 1u);
    for (std::size_t k = 0; k < rolls.size(); k += 37) {
        const auto w = std::span<const double>(r).subspan(k, 63);
        const auto cv = conditional_volatility(w);
        EXPECT_EQ(rolls[k].up, cv.up);
        EXPECT_EQ(rolls[k].down, cv.down);
        EXPECT_EQ(rolls[k].total, volatility(w));
    }
}

TEST(Asymmetry, Examples) {
    std::vector<VolatilityWindow> same(5, VolatilityWindow{0.2, 0.2, 0.3, true});
    auto f = asymmetry_frequencies(same, 0.05);
    EXPECT_EQ(f.p_plus, 0.0);
    EXPECT_EQ(f.p_minus, 0.0);

    const std::vector<VolatilityWindow> hand{
        {1.2, 1.0, 1.0, true}, {1.0, 1.2, 1.0, true}, {1.05, 1.0, 1.0, true}, {1.0, 1.3, 1.0, true}};
    f = asymmetry_frequencies(hand, 0.1);
    EXPECT_EQ(f.p_plus, 0.25);
    EXPECT_EQ(f.p_minus, 0.5);
    EXPECT_EQ(f.windows, 4u);

    const auto rolls = rolling_conditional_volatility(oracle::white_noise(400, 1), 63);
    f = asymmetry_frequencies(rolls, 1e-300);
    EXPECT_DOUBLE_EQ(f.p_plus + f.p_minus, 1.0);

    EXPECT_EQ(code_of([&] { asymmetry_frequencies(hand, 0.0); }), Errc::InvalidArgument);
    EXPECT_EQ(code_of([&] { asymmetry_frequencies(std::vector<VolatilityWindow>{}, 0.1); }), Errc::EmptyInput);
}

TEST(Asymmetry, NonincreasingInEpsilon) {
    const auto rolls = rolling_conditional_volatility(downside_heavy(2000, 3), 63);
    double pp = 2, pm = 2;
    for (double eps = 0.001; eps < 1.0; eps *= 1.5) {
        const auto f = asymmetry_frequencies(rolls, eps);
        EXPECT_LE(f.p_plus, pp);
        EXPECT_LE(f.p_minus, pm);
        EXPECT_LE(f.p_plus + f.p_minus, 1.0);
        pp = f.p_plus;
        pm = f.p_minus;
    }
}

TEST(Asymmetry, DownsideHeavySeriesFavoursMinus) {
    const auto rolls = rolling_conditional_volatility(downside_heavy(3000, 6), 63);
    const auto f = asymmetry_frequencies(rolls, kDefaultAsymmetryEpsilon);
    EXPECT_GT(f.p_minus, f.p_plus);
}
