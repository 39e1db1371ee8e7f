#include "kaczeros/zero_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kaczeros/errors.hpp"
#include "kaczeros/matching.hpp"
#include "kaczeros/polynomial.hpp"
#include "kaczeros/quadrature.hpp"
#include "kaczeros/summation.hpp"

namespace kaczeros {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
const double kLogPi = std::log(kPi);

// Returns the max modulus m and sum of (|x|/m)^p.
std::pair<double, double> scaled_power_sum(std::span<const cplx> v, double p) {
    double m = 0.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    if (m == 0.0 || std::isinf(p)) return {m, 1.0};
    double s = 0.0;
    for (const cplx& x : v) {
        const double r = std::abs(x) / m;
        s += p == 2.0 ? r * r : p == 1.0 ? r : std::pow(r, p);
    }
    return {m, s};
}

double log_norm(std::span<const cplx> v, double p) {
    const auto [m, s] = scaled_power_sum(v, p);
    if (m == 0.0) return -kInf;
    return std::log(m) + std::log(s) / p;
}

double log_combinatorial(std::size_t n, std::size_t k) {
    return static_cast<double>(k) * std::log(2.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - 2 * k) + 1.0);
}

// Exponent of |ã|-norm in the reference densities.
double norm_power(Field ensemble, std::size_t n) {
    return ensemble == Field::complex ? 2.0 * static_cast<double>(n) + 2.0 : static_cast<double>(n) + 1.0;
}

double reference_norm_p(Field ensemble) { return ensemble == Field::positive ? 1.0 : 2.0; }

// Coefficient k is compared against 1e-9 * e_k(|z|), the size of its rounding error scale.
bool in_positive_cone(std::span<const cplx> a, std::span<const cplx> roots) {
    std::vector<cplx> moduli(roots.size());
    std::transform(roots.begin(), roots.end(), moduli.begin(), [](const cplx& z) { return cplx(-std::abs(z), 0.0); });
    const std::vector<cplx> scale = expand_from_roots(moduli, 1.0).coeffs;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double tol = 1e-9 * std::abs(scale[k]);
        if (a[k].real() < -tol || std::abs(a[k].imag()) > tol) return false;
    }
    return true;
}

std::vector<cplx> canonical(std::span<const cplx> roots) {
    std::vector<cplx> sorted(roots.begin(), roots.end());
    sort_roots(sorted);
    return sorted;
}

DensityReport evaluate(Field ensemble, const std::vector<cplx>& sorted) {
    const std::size_t n = sorted.size();
    if (n < 1) throw InvalidArgument("joint density needs at least one root");
    DensityReport report;
    report.ensemble = ensemble;
    std::size_t k = 0;
    if (ensemble != Field::complex) {
        k = conjugate_pair_count(sorted);
        report.k = static_cast<int>(k);
    }
    const PairLogSum vandermonde = pair_log_sum(sorted);
    const double beta = ensemble == Field::complex ? 2.0 : 1.0;
    const std::vector<cplx> a = expand_from_roots(sorted, 1.0).coeffs;

    DensityComponents& c = report.components;
    report.coincident_roots = vandermonde.coincident;
    c.log_vandermonde = vandermonde.coincident ? -kInf : beta * vandermonde.value;
    c.log_norm_term = -norm_power(ensemble, n) * log_norm(a, reference_norm_p(ensemble));
    c.log_constant = log_density_constant(ensemble, n, k);
    if (ensemble == Field::positive && !in_positive_cone(a, sorted)) {
        c.support = -kInf;
        report.outside_positive_cone = true;
    }
    report.log_value = c.log_constant + c.log_vandermonde + c.log_norm_term + c.support;
    report.log_value_fiber = report.log_value - c.log_constant + log_fiber_constant(ensemble, n, k);
    return report;
}

// log(exp(a) + exp(b))
double log_add(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

struct FiberIntegral {
    double log_value = -kInf;
    double relative_error = 0.0;
};

// log of  int_E |a|^{m} prod_k g(a ã_k) dl_E(a)  via u = |a| s.
FiberIntegral fiber_integral(const CoefficientLaw& law, const std::vector<cplx>& a, double s, double m) {
    const Field field = law.field();
    std::vector<double> moduli(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) moduli[i] = std::abs(a[i]);

    auto sum_log_g = [&](cplx scale) {
        double total = 0.0;
        for (const cplx& x : a) {
            total += law.log_density(scale * x);
            if (total == -kInf) break;
        }
        return total;
    };
    auto log_integrand = [&](double u) -> double {
        if (!(u > 0.0)) return -kInf;
        const double t = u / s;
        double angular = -kInf;
        switch (field) {
            case Field::complex:
                if (law.radial()) {
                    double total = 0.0;
                    for (double mod : moduli) {
                        total += law.log_density(cplx(t * mod, 0.0));
                        if (total == -kInf) break;
                    }
                    angular = total + std::log(2.0 * kPi);
                } else {
                    constexpr int kAngles = 64;
                    angular = -kInf;
                    for (int j = 0; j < kAngles; ++j) angular = log_add(angular, sum_log_g(std::polar(t, 2.0 * kPi * j / kAngles)));
                    angular += std::log(2.0 * kPi / kAngles);
                }
                break;
            case Field::real: angular = log_add(sum_log_g(t), sum_log_g(-t)); break;
            case Field::positive: angular = sum_log_g(t); break;
        }
        return m * std::log(u) + angular;
    };

    double u_hi = kInf;
    if (auto radius = law.support_radius()) {
        const double amax = *std::max_element(moduli.begin(), moduli.end());
        u_hi = *radius * s / amax * (1.0 - 1e-13);
    }
    const double grid_lo = std::isfinite(u_hi) ? u_hi * 1e-8 : 1e-8;
    const double grid_hi = std::isfinite(u_hi) ? u_hi : 1e6;
    constexpr int kGrid = 600;
    std::vector<double> us(kGrid), vals(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        us[i] = std::exp(std::log(grid_lo) + (std::log(grid_hi) - std::log(grid_lo)) * i / (kGrid - 1));
        vals[i] = log_integrand(us[i]);
    }
    const int best = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    FiberIntegral out;
    if (vals[best] == -kInf) return out;

    // Golden-section refinement of the peak in log u.
    double peak = us[best];
    double peak_value = vals[best];
    {
        double lo = std::log(us[std::max(best - 1, 0)]);
        double hi = std::log(us[std::min(best + 1, kGrid - 1)]);
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
            const double x1 = hi - inv_phi * (hi - lo);
            const double x2 = lo + inv_phi * (hi - lo);
            if (log_integrand(std::exp(x1)) >= log_integrand(std::exp(x2))) {
                hi = x2;
            } else {
                lo = x1;
            }
        }
        const double candidate = std::exp(0.5 * (lo + hi));
        const double value = log_integrand(candidate);
        if (value > peak_value) {
            peak = candidate;
            peak_value = value;
        }
    }

    constexpr double kCut = 745.0;
    int first = 0, last = kGrid - 1;
    while (first < best && vals[first] - peak_value < -kCut) ++first;
    while (last > best && vals[last] - peak_value < -kCut) --last;
    const double lo = first > 0 ? us[first - 1] : 0.0;
    const double hi = last < kGrid - 1 ? us[last + 1] : grid_hi;
    if (!std::isfinite(u_hi) && last == kGrid - 1) {
        std::ostringstream diag;
        diag << "integrand not negligible at u = " << grid_hi << " (log-gap " << vals[last] - peak_value << ")";
        throw NumericFailure("fiber integral does not decay", diag.str());
    }

    const std::function<double(double)> f = [&](double u) { return std::exp(log_integrand(u) - peak_value); };
    const double cut[] = {peak};
    const quad::Result r = quad::integrate(f, lo, hi, cut, 1e-12, 20);
    if (!(r.value > 0.0) || !std::isfinite(r.value) || r.error > 1e-6 * r.value) {
        std::ostringstream diag;
        diag << "value=" << r.value << " error=" << r.error << " peak=" << peak << " range=[" << lo << ", " << hi << "]";
        throw NumericFailure("fiber quadrature did not converge", diag.str());
    }
    out.log_value = std::log(r.value) + peak_value - (m + 1.0) * std::log(s);
    out.relative_error = r.error / r.value;
    return out;
}

}  // namespace

double log_density_constant(Field ensemble, std::size_t n, std::size_t k) {
    const double nd = static_cast<double>(n);
    switch (ensemble) {
        case Field::complex: return std::lgamma(nd + 1.0) - nd * kLogPi;
        case Field::real: return log_combinatorial(n, k) + std::lgamma((nd + 1.0) / 2.0) - (nd - 1.0) / 2.0 * kLogPi;
        case Field::positive: return log_combinatorial(n, k) + std::lgamma(nd + 1.0);
    }
    return 0.0;
}

double log_fiber_constant(Field ensemble, std::size_t n, std::size_t k) {
    if (ensemble == Field::real) return log_density_constant(ensemble, n, k) - kLogPi;
    return log_density_constant(ensemble, n, k);
}

std::size_t conjugate_pair_count(std::span<const cplx> roots) {
    std::vector<cplx> upper, lower;
    double scale = 1.0;
    for (const cplx& z : roots) {
        scale = std::max(scale, std::abs(z));
        if (std::abs(z.imag()) <= 1e-12 * (1.0 + std::abs(z))) continue;
        (z.imag() > 0.0 ? upper : lower).push_back(z);
    }
    if (upper.size() != lower.size())
        throw InvalidConfiguration("root multiset is not closed under conjugation");
    for (cplx& z : lower) z = std::conj(z);
    if (!upper.empty() && matched_max_distance(upper, lower) > 1e-8 * scale)
        throw InvalidConfiguration("root multiset is not closed under conjugation");
    return upper.size();
}

DensityReport log_joint_density(Field ensemble, std::span<const cplx> roots) {
    DensityReport report = evaluate(ensemble, canonical(roots));
    if (ensemble == Field::real && roots.size() <= 2)
        report.log_value_normalized = report.log_value - std::log(small_n::real_normalizer(roots.size()));
    return report;
}

DensityReport log_joint_density(Field ensemble, const RootSet& roots) { return log_joint_density(ensemble, roots.roots); }

double vector_norm(std::span<const cplx> v, double p) {
    if (!(p > 0.0)) throw InvalidArgument("vector_norm needs p > 0");
    const auto [m, s] = scaled_power_sum(v, p);
    if (m == 0.0 || std::isinf(p)) return m;
    if (p == 2.0) return m * std::sqrt(s);
    if (p == 1.0) return m * s;
    return m * std::pow(s, 1.0 / p);
}

double vector_norm(const NormalizedCoefficients& v, double p) { return vector_norm(v.entries, p); }
double vector_norm(const CoefficientVector& v, double p) { return vector_norm(v.coeffs, p); }

double gamma_n(double rho, std::size_t n) {
    if (!(rho > 0.0)) throw InvalidArgument("gamma_n needs rho > 0");
    if (n < 1) throw InvalidArgument("gamma_n needs n >= 1");
    if (rho <= 2.0) return 1.0;
    return std::pow(static_cast<double>(n), -(0.5 - 1.0 / rho));
}

double log_theta(Field ensemble, std::size_t n) {
    const double nd = static_cast<double>(n);
    switch (ensemble) {
        case Field::complex: return 0.0;
        case Field::real: return (nd - 1.0) / 2.0 * kLogPi - std::lgamma((nd + 1.0) / 2.0);
        case Field::positive: return -std::lgamma(nd + 1.0);
    }
    return 0.0;
}

SandwichReport sandwich_log_ratio(const CoefficientLaw& law, std::span<const cplx> roots, Field reference) {
    if (law.field() != reference)
        throw InvalidArgument("sandwich_log_ratio: law field " + std::string(to_string(law.field())) +
                              " does not match reference ensemble " + std::string(to_string(reference)));
    const std::vector<cplx> sorted = canonical(roots);
    const std::size_t n = sorted.size();
    if (n < 1) throw InvalidArgument("sandwich_log_ratio needs at least one root");

    SandwichReport report;
    if (reference != Field::complex) report.k = conjugate_pair_count(sorted);
    std::vector<cplx> a = expand_from_roots(sorted, 1.0).coeffs;
    if (reference != Field::complex) {
        if (reference == Field::positive && !in_positive_cone(a, sorted))
            throw InvalidConfiguration("roots do not come from a polynomial with positive coefficients");
        for (cplx& x : a) x = {reference == Field::positive ? std::max(x.real(), 0.0) : x.real(), 0.0};
    }

    const double beta = reference == Field::complex ? 2.0 : 1.0;
    const double power = norm_power(reference, n);
    const double log_s = log_norm(a, reference_norm_p(reference));
    const double log_comb = reference == Field::complex ? 0.0 : log_combinatorial(n, report.k);
    const FiberIntegral fiber = fiber_integral(law, a, std::exp(log_s), beta * static_cast<double>(n) + (beta - 1.0));
    report.log_fiber_integral = fiber.log_value;
    report.relative_error = fiber.relative_error;

    const PairLogSum v = pair_log_sum(sorted);
    const double log_v = v.coincident ? -kInf : beta * v.value;
    const double ref_rest = log_fiber_constant(reference, n, report.k) - power * log_s;
    report.log_p_law = log_comb + log_v + fiber.log_value;
    report.log_p_reference = ref_rest + log_v;
    report.ratio = (log_comb + fiber.log_value - ref_rest) / (static_cast<double>(n) * static_cast<double>(n));
    return report;
}

SandwichReport sandwich_log_ratio(const CoefficientLaw& law, const RootSet& roots, Field reference) {
    return sandwich_log_ratio(law, roots.roots, reference);
}

namespace small_n {
namespace {

void require_real_ensemble(Field ensemble) {
    if (ensemble == Field::complex) throw InvalidArgument("mixture terms exist only for the real ensembles");
}

// Log density of the n = 1 or n = 2 configuration given by its monic coefficients.
double log_small_density(Field ensemble, std::size_t n, std::size_t k, std::span<const cplx> a, double log_vdm) {
    if (ensemble == Field::positive && std::any_of(a.begin(), a.end(), [](const cplx& x) { return x.real() < 0.0; }))
        return -kInf;
    return log_density_constant(ensemble, n, k) + log_vdm - norm_power(ensemble, n) * log_norm(a, reference_norm_p(ensemble));
}

double density_two_real(Field ensemble, double x1, double x2) {
    const cplx a[] = {x1 * x2, -(x1 + x2), 1.0};
    return std::exp(log_small_density(ensemble, 2, 0, a, std::log(std::abs(x1 - x2))));
}

// Integral over x2 of the all-real n = 2 density. For large |x1| the mass
// sits in a window of width ~1/|x1| near the origin, so the range is cut there.
double integrate_second_real(Field ensemble, double x1, double tol) {
    const double upper = ensemble == Field::positive ? 0.0 : kInf;
    const double w = 1.0 / (1.0 + std::abs(x1));
    const double centre = -x1 / (1.0 + x1 * x1);
    const double cuts[] = {x1, 0.0, centre - 4.0 * w, centre, centre + 4.0 * w, -1.0 - std::abs(x1), 1.0 + std::abs(x1)};
    return quad::integrate([&](double x2) { return density_two_real(ensemble, x1, x2); }, -kInf, upper, cuts, tol)
        .value;
}

}  // namespace

double mixture_mass(Field ensemble, std::size_t n, std::size_t k) {
    require_real_ensemble(ensemble);
    constexpr double kTol = 1e-10;
    const double upper = ensemble == Field::positive ? 0.0 : kInf;
    if (n == 1 && k == 0) {
        return quad::integrate(
                   [&](double x) {
                       const cplx a[] = {-x, 1.0};
                       return std::exp(log_small_density(ensemble, 1, 0, a, 0.0));
                   },
                   -kInf, upper, kTol)
            .value;
    }
    if (n == 2 && k == 0) {
        const double cuts[] = {-1.0, 0.0, 1.0};
        return quad::integrate([&](double x1) { return integrate_second_real(ensemble, x1, kTol); }, -kInf, upper, cuts,
                               kTol)
            .value;
    }
    if (n == 2 && k == 1) {
        const double cuts[] = {-1.0, 0.0, 1.0};
        return quad::integrate(
                   [&](double x) {
                       const double ycut[] = {1.0 + std::abs(x)};
                       return quad::integrate(
                                  [&](double y) {
                                      const cplx a[] = {x * x + y * y, -2.0 * x, 1.0};
                                      return std::exp(log_small_density(ensemble, 2, 1, a, std::log(2.0 * y)));
                                  },
                                  0.0, kInf, ycut, kTol)
                           .value;
                   },
                   -kInf, upper, cuts, kTol)
            .value;
    }
    throw InvalidArgument("mixture_mass is available for n = 1 (k = 0) and n = 2 (k = 0, 1)");
}

double real_normalizer(std::size_t n) {
    static const double z1 = mixture_mass(Field::real, 1, 0);
    static const double z2 = mixture_mass(Field::real, 2, 0) + mixture_mass(Field::real, 2, 1);
    if (n == 1) return z1;
    if (n == 2) return z2;
    throw InvalidArgument("real_normalizer is available for n = 1, 2");
}

double complex_radial_marginal(double r) {
    if (r < 0.0) return 0.0;
    const double log_c = log_density_constant(Field::complex, 2, 0);
    auto density = [&](cplx w) {
        const cplx z(r, 0.0);
        const cplx a[] = {z * w, -(z + w), 1.0};
        return std::exp(log_c + std::log(std::norm(z - w)) - 6.0 * log_norm(a, 2.0));
    };
    const double inner = quad::integrate(
                             [&](double rho) {
                                 return rho * quad::periodic_trapezoid([&](double t) { return density(std::polar(rho, t)); }, 64);
                             },
                             0.0, kInf, 1e-10)
                             .value;
    // The constant makes the density integrate to n! = 2 over C^2.
    return kPi * r * inner;
}

double real_stratum_marginal(Field ensemble, double x) {
    require_real_ensemble(ensemble);
    if (ensemble == Field::positive && x > 0.0) return 0.0;
    return integrate_second_real(ensemble, x, 1e-10);
}

}  // namespace small_n

}  // namespace kaczeros
