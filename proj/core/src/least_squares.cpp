#include "fbgshape/least_squares.hpp"

#include <algorithm>
#include <cmath>

namespace fbgshape::numerics {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw NumericError(std::string("least_squares: non-finite ") + what);
}

// Solves the symmetric positive (semi)definite n x n system in place via
// Gaussian elimination with partial pivoting. Returns false when singular.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, size_t n) {
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (std::abs(a[pivot * n + col]) < 1e-300) return false;
        if (pivot != col) {
            for (size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
            std::swap(b[col], b[pivot]);
        }
        for (size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (size_t k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
            b[r] -= f * b[col];
        }
    }
    for (size_t col = n; col-- > 0;) {
        double s = b[col];
        for (size_t k = col + 1; k < n; ++k) s -= a[col * n + k] * b[k];
        b[col] = s / a[col * n + col];
    }
    return true;
}

} // namespace

std::vector<double> finite_difference_jacobian(const ResidualFn& residual,
                                               const std::vector<double>& x) {
    const size_t n = x.size();
    std::vector<double> xp = x;
    const std::vector<double> r0 = residual(x);
    const size_t m = r0.size();
    std::vector<double> jac(m * n, 0.0);
    for (size_t j = 0; j < n; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        std::vector<double> rp = residual(xp);
        xp[j] = x[j] - h;
        std::vector<double> rm = residual(xp);
        xp[j] = x[j];
        if (rp.size() != m || rm.size() != m)
            throw NumericError("least_squares: residual length changed during differentiation");
        for (size_t i = 0; i < m; ++i) jac[i * n + j] = (rp[i] - rm[i]) / (2.0 * h);
    }
    return jac;
}

LeastSquaresResult least_squares(const ResidualFn& residual, std::optional<JacobianFn> jacobian,
                                 std::vector<double> x0, const LeastSquaresOptions& opts) {
    const size_t n = x0.size();
    if (n == 0) throw InvariantError("least_squares: empty parameter vector");
    check_finite(x0, "initial point");

    std::vector<double> x = std::move(x0);
    std::vector<double> r = residual(x);
    check_finite(r, "residual at initial point");
    double cost = norm2(r);

    double mu = 0.0; // first trial undamped: linear problems solve exactly
    double nu = 2.0;

    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        const size_t m = r.size();
        std::vector<double> jac = jacobian ? (*jacobian)(x) : finite_difference_jacobian(residual, x);
        if (jac.size() != m * n) throw NumericError("least_squares: jacobian has wrong shape");
        check_finite(jac, "jacobian");

        // Normal equations J^T J delta = -J^T r with column scaling.
        std::vector<double> jtj(n * n, 0.0), jtr(n, 0.0);
        for (size_t i = 0; i < m; ++i)
            for (size_t a = 0; a < n; ++a) {
                jtr[a] += jac[i * n + a] * r[i];
                for (size_t b = a; b < n; ++b) jtj[a * n + b] += jac[i * n + a] * jac[i * n + b];
            }
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < a; ++b) jtj[a * n + b] = jtj[b * n + a];

        std::vector<double> scale(n, 1.0);
        for (size_t a = 0; a < n; ++a)
            scale[a] = jtj[a * n + a] > 0.0 ? 1.0 / std::sqrt(jtj[a * n + a]) : 1.0;

        // Scaled-gradient stop: flat valleys (rank-deficient directions) can
        // otherwise sustain microscopic accepted steps indefinitely.
        double grad_inf = 0.0;
        for (size_t a = 0; a < n; ++a) grad_inf = std::max(grad_inf, std::abs(jtr[a] * scale[a]));
        if (grad_inf <= std::max(opts.tol, 1e-14) * std::max(1.0, cost))
            return {x, std::sqrt(cost), iter - 1};

        double max_diag = 0.0;
        for (size_t a = 0; a < n; ++a) max_diag = std::max(max_diag, jtj[a * n + a] * scale[a] * scale[a]);

        bool stepped = false;
        while (!stepped) {
            std::vector<double> lhs(n * n), rhs(n);
            for (size_t a = 0; a < n; ++a) {
                rhs[a] = -jtr[a] * scale[a];
                for (size_t b = 0; b < n; ++b) lhs[a * n + b] = jtj[a * n + b] * scale[a] * scale[b];
                lhs[a * n + a] += mu;
            }
            if (!solve_dense(lhs, rhs, n)) {
                // Singular even after scaling: raise damping and retry.
                mu = std::max(mu * 10.0, 1e-10);
                nu = 2.0;
                if (mu > 1e16)
                    throw NumericError("least_squares: singular Jacobian, damping recovery failed");
                continue;
            }

            std::vector<double> delta(n), x_try(n);
            double step_norm = 0.0;
            for (size_t a = 0; a < n; ++a) {
                delta[a] = rhs[a] * scale[a];
                x_try[a] = x[a] + delta[a];
                step_norm += delta[a] * delta[a];
            }
            step_norm = std::sqrt(step_norm);

            std::vector<double> r_try = residual(x_try);
            const double cost_try = norm2(r_try);
            if (std::isfinite(cost_try) && cost_try <= cost) {
                const double decrease = cost > 0.0 ? (cost - cost_try) / cost : 0.0;
                x = std::move(x_try);
                r = std::move(r_try);
                cost = cost_try;
                mu *= 0.5;
                if (mu < 1e-14) mu = 0.0;
                nu = 2.0;
                stepped = true;

                double xnorm = 0.0;
                for (double v : x) xnorm += v * v;
                if (step_norm < opts.tol * (1.0 + std::sqrt(xnorm)) || decrease < opts.tol ||
                    cost == 0.0)
                    return {x, std::sqrt(cost), iter};
            } else {
                mu = std::max(mu * nu, 1e-12);
                nu *= 2.0;
                if (mu > 1e16)
                    throw NumericError("least_squares: diverged (damping exhausted)");
            }
        }
    }
    throw NumericError("least_squares: no convergence within " +
                       std::to_string(opts.max_iterations) + " iterations");
}

} // namespace fbgshape::numerics
