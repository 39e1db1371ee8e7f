#pragma once

#include <span>
#include <vector>

#include "kaczeros/types.hpp"

namespace kaczeros {

struct Assignment {
    std::vector<int> column_of_row;
    double total_cost = 0.0;
};

/// Minimum-cost perfect assignment on a square cost matrix (row-major, n x n).
/// Hungarian method with potentials, O(n^3).
Assignment min_cost_assignment(std::span<const double> cost, int n);

/// Largest |a_i - b_sigma(i)| under the minimum-total-distance pairing.
/// Multisets of different size compare as +inf.
double matched_max_distance(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace kaczeros
