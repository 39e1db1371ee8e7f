#pragma once

#include <span>

#include "kaczeros/types.hpp"

namespace kaczeros {

/// Recursive pairwise sum; the reduction tree depends only on the length.
double pairwise_sum(std::span<const double> values);

struct PairLogSum {
    /// sum_{i<j} log|z_i - z_j|; -inf when two points coincide.
    double value = 0.0;
    bool coincident = false;
};

/// Row sums are compensated (Neumaier) and reduced pairwise, so the result is
/// bit-stable for a given input order.
PairLogSum pair_log_sum(std::span<const cplx> points);

}  // namespace kaczeros
