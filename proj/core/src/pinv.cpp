#include "fbgshape/numerics.hpp"

#include <cmath>

namespace fbgshape::numerics {

namespace {

bool finite(double v) { return std::isfinite(v); }

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

} // namespace

Svd23 svd_2x3(const Mat23& a) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            if (!finite(a(i, j))) throw NumericError("pinv: matrix entry is not finite");

    // Eigendecompose the 2x2 Gram matrix A A^T; singular values/left vectors
    // follow in closed form, right vectors as v = A^T u / sigma.
    const double p = dot3(a.row[0], a.row[0]);
    const double q = dot3(a.row[0], a.row[1]);
    const double r = dot3(a.row[1], a.row[1]);

    const double mean = 0.5 * (p + r);
    const double disc = std::hypot(0.5 * (p - r), q);
    const double l1 = mean + disc;
    const double l2 = std::max(mean - disc, 0.0);

    Svd23 out;
    out.sigma = {std::sqrt(std::max(l1, 0.0)), std::sqrt(l2)};

    Vec2 u1;
    // Eigenvector of [[p,q],[q,r]] for l1; pick the better-conditioned form.
    if (std::abs(l1 - r) >= std::abs(l1 - p)) {
        u1 = {l1 - r, q};
    } else {
        u1 = {q, l1 - p};
    }
    double n1 = std::hypot(u1[0], u1[1]);
    if (n1 == 0.0) u1 = {1.0, 0.0};
    else u1 = {u1[0] / n1, u1[1] / n1};
    const Vec2 u2 = {-u1[1], u1[0]};
    out.u = {u1, u2};

    for (int i = 0; i < 2; ++i) {
        if (out.sigma[size_t(i)] > 0.0) {
            for (int j = 0; j < 3; ++j)
                out.v[size_t(i)][size_t(j)] =
                    (out.u[size_t(i)][0] * a(0, j) + out.u[size_t(i)][1] * a(1, j)) / out.sigma[size_t(i)];
        } else {
            out.v[size_t(i)] = {0.0, 0.0, 0.0};
        }
    }
    return out;
}

Vec3 pinv_solve(const Mat23& a, const Vec2& rhs) {
    if (!finite(rhs[0]) || !finite(rhs[1])) throw NumericError("pinv: rhs is not finite");
    const Svd23 svd = svd_2x3(a);
    const double cutoff = 1e-12 * svd.sigma[0];
    Vec3 x{0.0, 0.0, 0.0};
    for (int i = 0; i < 2; ++i) {
        const double s = svd.sigma[size_t(i)];
        if (s <= cutoff || s == 0.0) continue;
        const double coeff = (svd.u[size_t(i)][0] * rhs[0] + svd.u[size_t(i)][1] * rhs[1]) / s;
        for (int j = 0; j < 3; ++j) x[size_t(j)] += coeff * svd.v[size_t(i)][size_t(j)];
    }
    return x;
}

Vec3 null_vector(const Mat23& a) {
    const Vec3& r0 = a.row[0];
    const Vec3& r1 = a.row[1];
    Vec3 n = {r0[1] * r1[2] - r0[2] * r1[1],
              r0[2] * r1[0] - r0[0] * r1[2],
              r0[0] * r1[1] - r0[1] * r1[0]};
    const double len = std::sqrt(dot3(n, n));
    const double scale = std::sqrt(dot3(r0, r0)) * std::sqrt(dot3(r1, r1));
    if (!(len > 1e-12 * scale) || len == 0.0)
        throw NumericError("null_vector: matrix rows are linearly dependent");
    return {n[0] / len, n[1] / len, n[2] / len};
}

} // namespace fbgshape::numerics
