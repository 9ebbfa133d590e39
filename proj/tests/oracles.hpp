#pragma once

// Independent test oracles. These deliberately avoid the library's own
// numerical kernels: pseudo-inverse and projections go through Eigen's SVD,
// the reference spline solves the full dense system, curvature estimates use
// the three-point circumcircle.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "fbgshape/numerics.hpp"

namespace oracles {

inline Eigen::Matrix<double, 2, 3> to_eigen(const fbgshape::numerics::Mat23& a) {
    Eigen::Matrix<double, 2, 3> m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = a(i, j);
    return m;
}

/// Minimum-norm least-squares solve via Eigen's SVD.
inline std::array<double, 3> pinv_solve_svd(const fbgshape::numerics::Mat23& a,
                                            const std::array<double, 2>& rhs) {
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(to_eigen(a),
                                                      Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(1e-12);
    Eigen::Vector3d x = svd.solve(Eigen::Vector2d(rhs[0], rhs[1]));
    return {x[0], x[1], x[2]};
}

/// Orthogonal projection of b onto the row space of a.
inline std::array<double, 3> rowspace_projection(const fbgshape::numerics::Mat23& a,
                                                 const std::array<double, 3>& b) {
    Eigen::Matrix<double, 3, 2> at = to_eigen(a).transpose();
    Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 3, 2>> qr(at);
    Eigen::Matrix3d q = qr.householderQ();
    Eigen::Vector3d v(b[0], b[1], b[2]);
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    for (int i = 0; i < qr.rank(); ++i) p += q.col(i).dot(v) * q.col(i);
    return {p[0], p[1], p[2]};
}

/// Natural cubic spline evaluated through a dense linear solve; returns the
/// interpolant value at query x (hold-endpoint outside the knots).
inline double natural_spline_dense(const std::vector<double>& xs, const std::vector<double>& ys,
                                   double x) {
    const int n = int(xs.size()) - 1;
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    m(0, 0) = 1.0;
    m(n, n) = 1.0;
    for (int i = 1; i < n; ++i) {
        const double h0 = xs[size_t(i)] - xs[size_t(i - 1)];
        const double h1 = xs[size_t(i + 1)] - xs[size_t(i)];
        m(i, i - 1) = h0;
        m(i, i) = 2.0 * (h0 + h1);
        m(i, i + 1) = h1;
        rhs(i) = 6.0 * ((ys[size_t(i + 1)] - ys[size_t(i)]) / h1 -
                        (ys[size_t(i)] - ys[size_t(i - 1)]) / h0);
    }
    Eigen::VectorXd sec = m.fullPivLu().solve(rhs);
    int seg = 0;
    while (seg + 1 < n && x > xs[size_t(seg + 1)]) ++seg;
    const double h = xs[size_t(seg + 1)] - xs[size_t(seg)];
    const double a = (xs[size_t(seg + 1)] - x) / h;
    const double b = (x - xs[size_t(seg)]) / h;
    return a * ys[size_t(seg)] + b * ys[size_t(seg + 1)] +
           ((a * a * a - a) * sec(seg) + (b * b * b - b) * sec(seg + 1)) * h * h / 6.0;
}

/// Curvature magnitude of the circumcircle through three points.
inline double circumcircle_curvature(double x1, double y1, double x2, double y2, double x3,
                                     double y3) {
    const double a = std::hypot(x2 - x1, y2 - y1);
    const double b = std::hypot(x3 - x2, y3 - y2);
    const double c = std::hypot(x3 - x1, y3 - y1);
    const double cross = (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1);
    return 2.0 * std::abs(cross) / (a * b * c);
}

/// Deterministic uniform double in [lo, hi].
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
}

} // namespace oracles
