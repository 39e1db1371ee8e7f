#include "kaczeros/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <vector>

namespace kaczeros::quad {

Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 unsigned max_depth) {
    if (a == b) return {};
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    double error = 0.0;
    if (std::isfinite(a) && std::isfinite(b)) {
        // Boost's error estimate on a short interval does not scale with its length; work on [0, 1].
        const double w = b - a;
        const double value = GK::integrate([&](double t) { return f(a + w * t) * w; }, 0.0, 1.0, max_depth, rel_tol, &error);
        return {value, error};
    }
    const double value = GK::integrate(f, a, b, max_depth, rel_tol, &error);
    return {value, error};
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, double rel_tol, unsigned max_depth) {
    std::vector<double> inner;
    for (double p : breakpoints) {
        if (p > a && p < b) inner.push_back(p);
    }
    std::sort(inner.begin(), inner.end());
    // A sliver piece cannot meet a relative tolerance against its own rounding noise.
    const double span = std::isfinite(a) && std::isfinite(b) ? b - a : 0.0;
    auto apart = [&](double x, double y) {
        if (std::isinf(x) || std::isinf(y)) return x != y;
        return std::abs(x - y) > 1e-9 * std::max({span, std::abs(x), std::abs(y)});
    };
    std::vector<double> cuts{a};
    for (double p : inner) {
        if (apart(p, cuts.back()) && apart(p, b)) cuts.push_back(p);
    }
    cuts.push_back(b);
    Result total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Result piece = integrate(f, cuts[i], cuts[i + 1], rel_tol, max_depth);
        total.value += piece.value;
        total.error += piece.error;
    }
    return total;
}

double periodic_trapezoid(const std::function<double(double)>& f, int points) {
    const double step = 2.0 * std::numbers::pi / points;
    double sum = 0.0;
    for (int i = 0; i < points; ++i) sum += f(step * i);
    return sum * step;
}

}  // namespace kaczeros::quad
