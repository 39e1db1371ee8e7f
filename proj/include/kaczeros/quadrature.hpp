#pragma once

#include <functional>
#include <span>

namespace kaczeros::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b]; either end may be infinite.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, unsigned max_depth = 18);

/// Same, with the interval split at the given interior breakpoints
/// (discontinuities of the integrand).
Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, double rel_tol = 1e-12,
                 unsigned max_depth = 18);

/// Periodic trapezoid rule over [0, 2pi) with `points` nodes.
double periodic_trapezoid(const std::function<double(double)>& f, int points);

}  // namespace kaczeros::quad
