#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kaczeros/coeff_laws.hpp"
#include "kaczeros/types.hpp"

namespace kaczeros {

/// log density = log_constant + log_vandermonde + log_norm_term + support.
struct DensityComponents {
    double log_vandermonde = 0.0;  // beta * sum_{i<j} log|z_i - z_j|, beta = 2 (C) or 1 (R, R+)
    double log_norm_term = 0.0;    // -(2n+2) log||ã||_2, -(n+1) log||ã||_2 or -(n+1) log||ã||_1
    double log_constant = 0.0;     // n!/pi^n, 2^k Gamma((n+1)/2)/(k!(n-2k)! pi^{(n-1)/2}), 2^k n!/(k!(n-2k)!)
    double support = 0.0;          // 0, or -inf outside the positive cone (R+)
};

/// Joint density of the zeros for one of the three reference ensembles.
///
/// Real ensembles: the configuration has n-2k real roots and k conjugate
/// pairs (k inferred); the density is with respect to Lebesgue measure on
/// the n-2k ordered real roots times the k roots in the upper half-plane.
struct DensityReport {
    double log_value = 0.0;
    /// Same density with the constant obtained by integrating the Gaussian law
    /// along the Vieta fiber; differs from log_value only for R, by -log(pi).
    double log_value_fiber = 0.0;
    /// Quadrature-normalized value (R only, n <= 2).
    std::optional<double> log_value_normalized;
    Field ensemble = Field::complex;
    std::optional<int> k;
    DensityComponents components;
    bool coincident_roots = false;
    bool outside_positive_cone = false;
};

DensityReport log_joint_density(Field ensemble, std::span<const cplx> roots);
DensityReport log_joint_density(Field ensemble, const RootSet& roots);

/// Literal log constant of the (ensemble, n, k) term.
double log_density_constant(Field ensemble, std::size_t n, std::size_t k);
/// Constant from the Vieta-fiber integral of the reference law.
double log_fiber_constant(Field ensemble, std::size_t n, std::size_t k);

/// Number of conjugate pairs in a conjugation-closed configuration.
/// Throws InvalidConfiguration when the multiset is not closed.
std::size_t conjugate_pair_count(std::span<const cplx> roots);

/// (sum |v_i|^p)^{1/p} for p > 0, max |v_i| for p = +inf. Quasi-norm for p < 1.
double vector_norm(std::span<const cplx> v, double p);
double vector_norm(const NormalizedCoefficients& v, double p);
double vector_norm(const CoefficientVector& v, double p);

/// 1 for rho <= 2, n^{-(1/2 - 1/rho)} for rho > 2.
double gamma_n(double rho, std::size_t n);

/// log theta_n^E: log(pi^{(n-1)/2} / Gamma((n+1)/2)) for R, -log n! for R+, 0 for C.
double log_theta(Field ensemble, std::size_t n);

struct SandwichReport {
    /// (1/n^2) [log p_law(roots) - log p_reference(roots)].
    double ratio = 0.0;
    double log_p_law = 0.0;
    double log_p_reference = 0.0;
    /// log of the fiber integral over a_n and its relative error estimate.
    double log_fiber_integral = 0.0;
    double relative_error = 0.0;
    std::size_t k = 0;
};

/// Density of the zeros under `law`, by 1-D quadrature over the leading
/// coefficient along the Vieta fiber (substitution u = |a_n| ||ã||), divided
/// by the reference ensemble's density. The reference uses the fiber constant.
SandwichReport sandwich_log_ratio(const CoefficientLaw& law, std::span<const cplx> roots, Field reference);
SandwichReport sandwich_log_ratio(const CoefficientLaw& law, const RootSet& roots, Field reference);

/// Small-degree quadrature oracles (n = 1, 2) of the joint densities.
namespace small_n {

/// Mass of the k-th mixture term (literal constant) for R or R+.
double mixture_mass(Field ensemble, std::size_t n, std::size_t k);

/// Total mass of the literal-constant real-ensemble density (n = 1, 2); cached.
double real_normalizer(std::size_t n);

/// Probability density of |z| for the complex ensemble at n = 2, z a uniformly chosen root.
double complex_radial_marginal(double r);

/// Density at x of one uniformly chosen root in the all-real stratum (k = 0)
/// at n = 2, unnormalized (integrates to mixture_mass(ensemble, 2, 0)).
double real_stratum_marginal(Field ensemble, double x);

}  // namespace small_n

}  // namespace kaczeros
