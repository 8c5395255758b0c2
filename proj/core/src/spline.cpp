#include "acemd/spline.hpp"

#include <algorithm>

#include "acemd/error.hpp"

namespace acemd {
namespace {

// Second derivatives at the knots. Tridiagonal system for the interior
// ones, solved with the Thomas algorithm; natural ends m_0 = m_{n-1} = 0.
void solve_moments(std::span<const double> xs, std::span<const double> ys, std::vector<double>& m,
                   std::vector<double>& diag, std::vector<double>& rhs) {
    const std::size_t n = xs.size();
    m.assign(n, 0.0);
    if (n <= 2) return;
    const std::size_t k = n - 2;
    diag.resize(k);
    rhs.resize(k);
    // The super-diagonal entry of row i is h_{i+1}, read straight from xs.
    for (std::size_t i = 0; i < k; ++i) {
        const double h0 = xs[i + 1] - xs[i];
        const double h1 = xs[i + 2] - xs[i + 1];
        diag[i] = 2.0 * (h0 + h1);
        rhs[i] = 6.0 * ((ys[i + 2] - ys[i + 1]) / h1 - (ys[i + 1] - ys[i]) / h0);
    }
    for (std::size_t i = 1; i < k; ++i) {
        const double w = (xs[i + 1] - xs[i]) / diag[i - 1];
        diag[i] -= w * (xs[i + 1] - xs[i]);
        rhs[i] -= w * rhs[i - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) {
        m[i + 1] = (rhs[i] - (xs[i + 2] - xs[i + 1]) * m[i + 2]) / diag[i];
    }
}

}  // namespace

NaturalCubicSpline::NaturalCubicSpline(std::span<const double> xs, std::span<const double> ys)
    : xs_(xs.begin(), xs.end()) {
    if (xs.size() != ys.size()) throw Error(Errc::InvalidArgument, "spline knot arrays differ in size");
    if (xs.size() < 2) throw Error(Errc::InsufficientExtrema, "spline needs at least two knots");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) throw Error(Errc::InvalidArgument, "spline knots must be strictly increasing");
    }

    const std::size_t n = xs_.size();
    std::vector<double> m, diag, rhs;
    solve_moments(xs, ys, m, diag, rhs);

    c0_.resize(n - 1);
    c1_.resize(n - 1);
    c2_.resize(n - 1);
    c3_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = xs[i + 1] - xs[i];
        c0_[i] = ys[i];
        c1_[i] = (ys[i + 1] - ys[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
        c2_[i] = 0.5 * m[i];
        c3_[i] = (m[i + 1] - m[i]) / (6.0 * h);
    }
}

double NaturalCubicSpline::eval_segment(std::size_t k, double x) const {
    const double d = x - xs_[k];
    return c0_[k] + d * (c1_[k] + d * (c2_[k] + d * c3_[k]));
}

double NaturalCubicSpline::operator()(double x) const {
    // Outside the knot range the end cubic is extended.
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t k = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
    k = std::min(k, xs_.size() - 2);
    return eval_segment(k, x);
}

void NaturalCubicSpline::evaluate_grid(std::span<double> out) const {
    const std::size_t last = xs_.size() - 2;
    const double* xs = xs_.data();
    std::size_t k = 0;
    for (std::size_t t = 0; t < out.size(); ++t) {
        const double x = static_cast<double>(t);
        while (k < last && x >= xs[k + 1]) ++k;
        const double d = x - xs[k];
        out[t] = c0_[k] + d * (c1_[k] + d * (c2_[k] + d * c3_[k]));
    }
}

}  // namespace acemd

namespace acemd {

void natural_spline_grid(std::span<const double> xs, std::span<const double> ys, std::span<double> out,
                         bool average) {
    thread_local std::vector<double> m, diag, rhs;
    solve_moments(xs, ys, m, diag, rhs);
    const std::size_t last = xs.size() - 2, n = out.size();
    std::size_t t = 0;
    // Segment k covers xs[k] <= x < xs[k+1]; the end segments extend outward.
    for (std::size_t k = 0; k <= last && t < n; ++k) {
        const double h = xs[k + 1] - xs[k];
        const double c0 = ys[k];
        const double c1 = (ys[k + 1] - ys[k]) / h - h * (2.0 * m[k] + m[k + 1]) / 6.0;
        const double c2 = 0.5 * m[k];
        const double c3 = (m[k + 1] - m[k]) / (6.0 * h);
        const double x0 = xs[k];
        const double stop = k == last ? static_cast<double>(n) : xs[k + 1];
        for (; t < n && static_cast<double>(t) < stop; ++t) {
            const double d = static_cast<double>(t) - x0;
            const double v = c0 + d * (c1 + d * (c2 + d * c3));
            out[t] = average ? 0.5 * (out[t] + v) : v;
        }
    }
}

}  // namespace acemd
