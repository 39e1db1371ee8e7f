#pragma once

#include <span>
#include <vector>

#include "kaczeros/types.hpp"

namespace kaczeros {

/// Coefficients of leading * prod (z - z_i), lowest degree first.
CoefficientVector expand_from_roots(std::span<const cplx> roots, cplx leading);

/// ã_k = a_k / a_n; the last entry is exactly 1.
NormalizedCoefficients tilde_a(const CoefficientVector& c);

enum class RootMethod { aberth, companion, automatic };

RootMethod parse_root_method(std::string_view text);

struct RootOptions {
    RootMethod method = RootMethod::aberth;
    /// Certification threshold on the max relative backward error.
    double tol = 1e-12;
    int max_iterations = 1000;
};

/// Largest degree accepted by the companion-matrix solver.
inline constexpr std::size_t kCompanionMaxDegree = 512;

/// All n roots with multiplicity, sorted by (Re, Im).
///
/// Aberth-Ehrlich (default): exact power-of-two coefficient scaling, initial
/// guesses on the circle of radius |a_0/a_n|^{1/n} with a fixed rotation,
/// Gauss-Seidel updates, compensated Horner evaluation (reversed polynomial
/// outside the unit disk) and a long double Newton polish for roots whose
/// backward error exceeds `tol`. Exact zero roots are deflated first.
/// When every coefficient is real the result is snapped/paired so the
/// multiset is closed under conjugation.
///
/// Throws ConvergenceFailure when the iteration budget runs out and the
/// backward error is still above `tol`.
RootSet find_roots(const CoefficientVector& c, const RootOptions& options = {});
RootSet find_roots(const CoefficientVector& c, RootMethod method, double tol = 1e-12);

struct ResidualReport {
    double max_backward_error = 0.0;
    std::vector<double> per_root;
    /// max_k |expand(roots, a_n)_k - a_k| / (|a_n| e_k(|z|)).
    double coefficient_error = 0.0;
};

/// Per-root |P(z)| / sum_k |a_k| max(1,|z|)^k, evaluated with compensated Horner.
ResidualReport residual_report(const CoefficientVector& c, const RootSet& roots);

/// Relative backward error of a single point.
double backward_error(std::span<const cplx> coeffs, cplx z);

/// P(z) by compensated Horner (result as accurate as if computed in twice the working precision).
cplx compensated_horner(std::span<const cplx> coeffs, cplx z);

/// Eigenvalues of the balanced companion matrix (independent oracle for find_roots).
std::vector<cplx> companion_roots(std::span<const cplx> coeffs);

/// Snap near-real roots (|Im z| < 1e-12 (1 + |z|)) to the axis and pair the rest
/// into exact conjugate pairs.
void enforce_conjugate_pairs(std::vector<cplx>& roots);

void sort_roots(std::vector<cplx>& roots);

}  // namespace kaczeros
