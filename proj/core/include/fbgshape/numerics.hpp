#pragma once

#include <array>
#include <functional>

#include "fbgshape/errors.hpp"

// Self-contained numerical kernels: fixed-size pseudo-inverse, composite
// Simpson quadrature. Splines and least squares live in their own headers.

namespace fbgshape::numerics {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

/// 2x3 matrix, row-major.
struct Mat23 {
    std::array<Vec3, 2> row{};

    double operator()(int i, int j) const { return row[size_t(i)][size_t(j)]; }
    double& operator()(int i, int j) { return row[size_t(i)][size_t(j)]; }
};

/// Minimum-norm least-squares solution x = A^+ rhs of the underdetermined
/// system A x = rhs, via SVD with singular-value cutoff 1e-12 * sigma_max.
/// For full-row-rank A the residual A x - rhs vanishes.
Vec3 pinv_solve(const Mat23& a, const Vec2& rhs);

/// Thin SVD of a 2x3 matrix: A = sum_i s[i] * u[i] * v[i]^T with s[0] >= s[1].
struct Svd23 {
    std::array<double, 2> sigma{};
    std::array<Vec2, 2> u{};
    std::array<Vec3, 2> v{};
};
Svd23 svd_2x3(const Mat23& a);

/// Unit null-space vector of a rank-2 2x3 matrix (cross product of the rows).
/// Throws NumericError when the rows are linearly dependent.
Vec3 null_vector(const Mat23& a);

/// Composite Simpson integral of f over [a, b] with panel width <= step.
/// Error is O(step^4) for smooth integrands; throws NumericError when the
/// integrand evaluates to a non-finite value.
double integrate(const std::function<double(double)>& f, double a, double b, double step);

/// Default quadrature/propagation step used by the reconstruction chain, mm.
inline constexpr double kDefaultStepMm = 0.1;

} // namespace fbgshape::numerics
