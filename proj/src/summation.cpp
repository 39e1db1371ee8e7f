#include "kaczeros/summation.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace kaczeros {

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

PairLogSum pair_log_sum(std::span<const cplx> points) {
    const std::size_t n = points.size();
    PairLogSum out;
    std::vector<double> rows(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0, comp = 0.0;
        const double xi = points[i].real(), yi = points[i].imag();
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = xi - points[j].real();
            const double dy = yi - points[j].imag();
            const double d2 = dx * dx + dy * dy;
            if (d2 == 0.0) {
                out.coincident = true;
                out.value = -std::numeric_limits<double>::infinity();
                return out;
            }
            const double term = 0.5 * std::log(d2);
            const double t = sum + term;
            comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
        rows[i] = sum + comp;
    }
    out.value = pairwise_sum(rows);
    return out;
}

}  // namespace kaczeros
