#pragma once

#include <span>
#include <vector>

namespace acemd {

/// Natural cubic spline (zero second derivative at both ends) through a set
/// of knots with strictly increasing abscissae. Two knots give a line.
class NaturalCubicSpline {
public:
    /// Throws InsufficientExtrema for fewer than two knots and
    /// InvalidArgument for non-increasing abscissae or mismatched sizes.
    NaturalCubicSpline(std::span<const double> xs, std::span<const double> ys);

    double operator()(double x) const;

    /// Evaluates at x = 0, 1, ..., out.size() - 1.
    void evaluate_grid(std::span<double> out) const;

    std::size_t knot_count() const noexcept { return xs_.size(); }

private:
    double eval_segment(std::size_t k, double x) const;

    std::vector<double> xs_;
    // Per-segment polynomial in (x - xs_[k]): c0 + c1 d + c2 d^2 + c3 d^3.
    std::vector<double> c0_, c1_, c2_, c3_;
};

/// NaturalCubicSpline(xs, ys).evaluate_grid(out) without keeping the
/// spline; reuses per-thread scratch, which matters inside sifting loops.
/// With `average` set, out[t] becomes 0.5 * (out[t] + s(t)). Knots are not
/// validated.
void natural_spline_grid(std::span<const double> xs, std::span<const double> ys, std::span<double> out,
                         bool average = false);

}  // namespace acemd
