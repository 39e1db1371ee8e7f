#include "kaczeros/matching.hpp"

#include <algorithm>
#include <limits>

#include "kaczeros/errors.hpp"

namespace kaczeros {

Assignment min_cost_assignment(std::span<const double> cost, int n) {
    if (n < 0 || cost.size() != static_cast<std::size_t>(n) * n)
        throw InvalidArgument("assignment cost matrix must be n x n");
    constexpr double kInf = std::numeric_limits<double>::infinity();
    // 1-based arrays, column 0 is a sentinel.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> row_of_col(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        row_of_col[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = row_of_col[j0];
            double delta = kInf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (row_of_col[j0] != 0);
        do {
            const int j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    Assignment out;
    out.column_of_row.assign(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (row_of_col[j] > 0) out.column_of_row[row_of_col[j] - 1] = j - 1;
    }
    for (int i = 0; i < n; ++i) out.total_cost += cost[static_cast<std::size_t>(i) * n + out.column_of_row[i]];
    return out;
}

double matched_max_distance(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(a.size());
    std::vector<double> cost(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost[static_cast<std::size_t>(i) * n + j] = std::abs(a[i] - b[j]);
    const Assignment match = min_cost_assignment(cost, n);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, cost[static_cast<std::size_t>(i) * n + match.column_of_row[i]]);
    return worst;
}

}  // namespace kaczeros
