#include "fbgshape/spline.hpp"

#include <algorithm>
#include <cmath>

namespace fbgshape::numerics {

Spline1D Spline1D::fit(std::vector<double> knots, std::vector<double> values) {
    return build(std::move(knots), std::move(values), SplineEnd::Natural, 0.0, 0.0);
}

Spline1D Spline1D::fit_clamped_start(std::vector<double> knots, std::vector<double> values,
                                     double start_slope) {
    return build(std::move(knots), std::move(values), SplineEnd::ClampedStart, start_slope, 0.0);
}

Spline1D Spline1D::fit_clamped(std::vector<double> knots, std::vector<double> values,
                               double start_slope, double end_slope) {
    return build(std::move(knots), std::move(values), SplineEnd::ClampedBoth, start_slope,
                 end_slope);
}

Spline1D Spline1D::build(std::vector<double> x, std::vector<double> y, SplineEnd end,
                         double start_slope, double end_slope) {
    if (x.size() < 2) throw InvariantError("spline: at least 2 knots required");
    if (x.size() != y.size()) throw InvariantError("spline: knots/values size mismatch");
    for (size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i + 1] > x[i])) throw InvariantError("spline: knots must be strictly increasing");
    for (size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw InvariantError("spline: non-finite knot data");

    const size_t n = x.size() - 1; // segments
    std::vector<double> h(n);
    for (size_t i = 0; i < n; ++i) h[i] = x[i + 1] - x[i];

    // Tridiagonal system for the knot second derivatives m[0..n].
    std::vector<double> lower(n + 1, 0.0), diag(n + 1, 0.0), upper(n + 1, 0.0), rhs(n + 1, 0.0);
    if (end == SplineEnd::Natural) {
        diag[0] = 1.0;
    } else {
        diag[0] = 2.0 * h[0];
        upper[0] = h[0];
        rhs[0] = 6.0 * ((y[1] - y[0]) / h[0] - start_slope);
    }
    for (size_t i = 1; i < n; ++i) {
        lower[i] = h[i - 1];
        diag[i] = 2.0 * (h[i - 1] + h[i]);
        upper[i] = h[i];
        rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
    }
    if (end == SplineEnd::ClampedBoth) {
        lower[n] = h[n - 1];
        diag[n] = 2.0 * h[n - 1];
        rhs[n] = 6.0 * (end_slope - (y[n] - y[n - 1]) / h[n - 1]);
    } else {
        diag[n] = 1.0; // natural far end
    }

    // Thomas sweep.
    std::vector<double> m(n + 1, 0.0);
    for (size_t i = 1; i <= n; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    m[n] = rhs[n] / diag[n];
    for (size_t i = n; i-- > 0;) m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];

    Spline1D s;
    s.x_ = std::move(x);
    s.y_ = std::move(y);
    s.b_.resize(n);
    s.c_.resize(n);
    s.d_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        s.b_[i] = (s.y_[i + 1] - s.y_[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
        s.c_[i] = 0.5 * m[i];
        s.d_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
    }
    return s;
}

size_t Spline1D::segment(double x) const {
    // Largest i with x_[i] <= x, clamped to a valid segment index.
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    size_t i = size_t(std::distance(x_.begin(), it));
    if (i == 0) return 0;
    return std::min(i - 1, x_.size() - 2);
}

double Spline1D::eval(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const size_t i = segment(x);
    const double t = x - x_[i];
    return y_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

double Spline1D::derivative(double x) const {
    if (x < x_.front() || x > x_.back()) return 0.0; // endpoint hold
    const size_t i = segment(x);
    const double t = x - x_[i];
    return b_[i] + t * (2.0 * c_[i] + 3.0 * t * d_[i]);
}

double Spline1D::second_derivative(double x) const {
    if (x < x_.front() || x > x_.back()) return 0.0;
    const size_t i = segment(x);
    const double t = x - x_[i];
    return 2.0 * c_[i] + 6.0 * t * d_[i];
}

} // namespace fbgshape::numerics
