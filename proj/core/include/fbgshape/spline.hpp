#pragma once

#include <vector>

#include "fbgshape/errors.hpp"

namespace fbgshape::numerics {

/// End condition for the cubic interpolant.
enum class SplineEnd {
    Natural,      // zero second derivative at both ends
    ClampedStart, // prescribed first derivative at the first knot, natural end
    ClampedBoth,  // prescribed first derivative at both end knots
};

/// Piecewise-cubic C2 interpolant through strictly increasing knots.
///
/// Queries outside the knot range return the nearest endpoint value
/// (hold-endpoint policy); the derivative is zero there.
class Spline1D {
public:
    /// Natural cubic fit. Throws InvariantError for fewer than 2 knots or
    /// non-increasing knot abscissae.
    static Spline1D fit(std::vector<double> knots, std::vector<double> values);

    /// Fit with a prescribed start slope (natural condition at the far end).
    static Spline1D fit_clamped_start(std::vector<double> knots, std::vector<double> values,
                                      double start_slope);

    /// Fit with prescribed slopes at both end knots.
    static Spline1D fit_clamped(std::vector<double> knots, std::vector<double> values,
                                double start_slope, double end_slope);

    double eval(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

private:
    Spline1D() = default;
    static Spline1D build(std::vector<double> x, std::vector<double> y, SplineEnd end,
                          double start_slope, double end_slope);
    size_t segment(double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    // Segment i covers [x_i, x_{i+1}]: y = a + b*t + c*t^2 + d*t^3, t = x - x_i.
    std::vector<double> b_, c_, d_;
};

} // namespace fbgshape::numerics
