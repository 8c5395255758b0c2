#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "acemd/error.hpp"
#include "acemd/spline.hpp"
#include "oracles.hpp"

using acemd::NaturalCubicSpline;

TEST(Spline, TwoKnotsIsLine) {
    const std::vector<double> xs{2, 10}, ys{1, 5};
    NaturalCubicSpline s(xs, ys);
    for (double x = 0; x <= 14; x += 0.5) EXPECT_NEAR(s(x), 1 + 0.5 * (x - 2), 1e-13);
}

TEST(Spline, ReproducesLine) {
    const std::vector<double> xs{0, 1.5, 4, 7, 7.5, 12};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(-3 + 0.7 * x);
    NaturalCubicSpline s(xs, ys);
    std::vector<double> grid(15);
    s.evaluate_grid(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(grid[i], -3 + 0.7 * double(i), 1e-12);
}

TEST(Spline, MatchesDenseSolve) {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> gap(0.5, 5.0), val(-2, 2);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> xs{0}, ys{val(g)};
        for (int k = 1; k < 12; ++k) {
            xs.push_back(xs.back() + gap(g));
            ys.push_back(val(g));
        }
        NaturalCubicSpline s(xs, ys);
        for (std::size_t k = 0; k < xs.size(); ++k) EXPECT_NEAR(s(xs[k]), ys[k], 1e-12);
        for (double x = xs.front(); x <= xs.back(); x += 0.37) {
            EXPECT_NEAR(s(x), oracle::natural_spline_dense(xs, ys, x), 1e-10);
        }
    }
}

TEST(Spline, Contract) {
    const std::vector<double> one{1}, two{1, 1}, dup{0, 0};
    EXPECT_THROW(NaturalCubicSpline(one, one), acemd::Error);
    EXPECT_THROW(NaturalCubicSpline(dup, two), acemd::Error);
    try {
        NaturalCubicSpline(one, one);
    } catch (const acemd::Error& e) {
        EXPECT_EQ(e.code(), acemd::Errc::InsufficientExtrema);
    }
}
