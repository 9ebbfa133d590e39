#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fbgshape/errors.hpp"

namespace fbgshape::numerics {

/// residual(x) -> residual vector r (may change length only between problems).
using ResidualFn = std::function<std::vector<double>(const std::vector<double>&)>;

/// jacobian(x) -> row-major m x n Jacobian of the residual.
using JacobianFn = std::function<std::vector<double>(const std::vector<double>&)>;

struct LeastSquaresOptions {
    double tol = 1e-12;       // step-norm and relative-decrease threshold
    int max_iterations = 500; // hard cap; exceeding it raises NumericError
};

struct LeastSquaresResult {
    std::vector<double> x;
    double residual_norm = 0.0;
    int iterations = 0;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) minimization of |r(x)|^2.
///
/// Normal equations are column-scaled before solving; the first trial uses
/// zero damping so linear problems finish in one step. Without a supplied
/// Jacobian, central finite differences are used.
LeastSquaresResult least_squares(const ResidualFn& residual, std::optional<JacobianFn> jacobian,
                                 std::vector<double> x0, const LeastSquaresOptions& opts = {});

/// Central-difference Jacobian (row-major m x n), exposed for verification.
std::vector<double> finite_difference_jacobian(const ResidualFn& residual,
                                               const std::vector<double>& x);

} // namespace fbgshape::numerics
