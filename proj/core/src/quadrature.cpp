#include "fbgshape/numerics.hpp"

#include <cmath>

namespace fbgshape::numerics {

double integrate(const std::function<double(double)>& f, double a, double b, double step) {
    if (!(a <= b)) throw InvariantError("integrate: requires a <= b");
    if (!(step > 0.0)) throw InvariantError("integrate: requires step > 0");
    if (a == b) return 0.0;

    auto eval = [&](double s) {
        double v = f(s);
        if (!std::isfinite(v)) throw NumericError("integrate: integrand not finite at s=" + std::to_string(s));
        return v;
    };

    // Even panel count, panel width <= step.
    size_t n = size_t(std::ceil((b - a) / step));
    n = std::max<size_t>(n, 2);
    if (n % 2 != 0) ++n;
    const double h = (b - a) / double(n);

    double sum = eval(a) + eval(b);
    for (size_t i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * eval(a + double(i) * h);
    return sum * h / 3.0;
}

} // namespace fbgshape::numerics
