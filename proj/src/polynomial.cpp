#include "kaczeros/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kaczeros/errors.hpp"
#include "kaczeros/matching.hpp"

namespace kaczeros {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Plain complex arithmetic; avoids the NaN-recovery path of operator*.
inline cplx mul(cplx x, cplx y) noexcept {
    return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

inline cplx inv(cplx d) noexcept {
    const double s = d.real() * d.real() + d.imag() * d.imag();
    return {d.real() / s, -d.imag() / s};
}

inline cplx div(cplx x, cplx y) noexcept { return mul(x, inv(y)); }

inline bool finite(cplx z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void two_sum(double a, double b, double& s, double& e) noexcept {
    s = a + b;
    const double z = s - a;
    e = (a - (s - z)) + (b - z);
}

inline void two_prod(double a, double b, double& p, double& e) noexcept {
    p = a * b;
    e = std::fma(a, b, -p);
}

// Horner value of p and p'.
inline void horner_with_derivative(std::span<const cplx> a, cplx z, cplx& p, cplx& dp) noexcept {
    const std::size_t n = a.size() - 1;
    p = a[n];
    dp = 0.0;
    for (std::size_t k = n; k-- > 0;) {
        dp = mul(dp, z) + p;
        p = mul(p, z) + a[k];
    }
}

inline double abs_horner(std::span<const cplx> a, double r) noexcept {
    const std::size_t n = a.size() - 1;
    double s = std::abs(a[n]);
    for (std::size_t k = n; k-- > 0;) s = s * r + std::abs(a[k]);
    return s;
}

std::vector<cplx> reversed(std::span<const cplx> a) { return {a.rbegin(), a.rend()}; }

struct NewtonStep {
    cplx ratio;             // p(z) / p'(z)
    double backward_error;  // |p(z)| / sum |a_k| max(1,|z|)^k
    bool exact_zero;
};

NewtonStep newton_step(std::span<const cplx> a, std::span<const cplx> rev, double abs_sum, cplx z) {
    const std::size_t n = a.size() - 1;
    if (std::norm(z) <= 1.0) {
        cplx p = compensated_horner(a, z);
        if (p == cplx(0.0)) return {0.0, 0.0, true};
        cplx plain, dp;
        horner_with_derivative(a, z, plain, dp);
        return {div(p, dp), std::abs(p) / abs_sum, false};
    }
    const cplx w = inv(z);
    const cplx q = compensated_horner(rev, w);
    if (q == cplx(0.0)) return {0.0, 0.0, true};
    cplx plain, dq;
    horner_with_derivative(rev, w, plain, dq);
    const cplx ratio = div(mul(z, q), static_cast<double>(n) * q - mul(w, dq));
    return {ratio, std::abs(q) / abs_horner(rev, std::abs(w)), false};
}

struct AberthResult {
    std::vector<cplx> roots;
    bool converged = false;
    int iterations = 0;
};

AberthResult aberth(std::span<const cplx> a, int max_iterations) {
    const std::size_t d = a.size() - 1;
    AberthResult out;
    if (d == 1) {
        out.roots = {-a[0] / a[1]};
        out.converged = true;
        return out;
    }
    const std::vector<cplx> rev = reversed(a);
    double abs_sum = 0.0;
    for (const cplx& c : a) abs_sum += std::abs(c);

    const double radius = std::exp((std::log(std::abs(a[0])) - std::log(std::abs(a[d]))) / static_cast<double>(d));
    constexpr double kRotation = 0.4;
    std::vector<cplx>& z = out.roots;
    z.resize(d);
    for (std::size_t k = 0; k < d; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) + kRotation);

    std::vector<char> done(d, 0);
    for (int it = 0; it < max_iterations; ++it) {
        bool all_done = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i]) continue;
            const cplx zi = z[i];
            const NewtonStep step = newton_step(a, rev, abs_sum, zi);
            if (step.exact_zero || step.backward_error <= kEps) {
                done[i] = 1;
                continue;
            }
            cplx sum = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                if (j != i) sum += inv(zi - z[j]);
            }
            cplx delta = div(step.ratio, cplx(1.0) - mul(step.ratio, sum));
            if (!finite(delta)) delta = step.ratio;
            if (!finite(delta)) {
                // p'(z) vanished or two iterates collided: nudge off the degenerate point.
                z[i] = zi * cplx(1.0, 1e-7) + cplx(1e-10, 0.0);
                all_done = false;
                continue;
            }
            z[i] = zi - delta;
            if (std::abs(delta) <= 4.0 * kEps * std::abs(z[i])) {
                done[i] = 1;
            } else {
                all_done = false;
            }
        }
        out.iterations = it + 1;
        if (all_done) {
            out.converged = true;
            break;
        }
    }
    return out;
}

using lcplx = std::complex<long double>;

// Newton polish in extended precision.
cplx polish_long_double(std::span<const cplx> a, cplx z0) {
    const std::size_t n = a.size() - 1;
    lcplx z(z0.real(), z0.imag());
    for (int it = 0; it < 8; ++it) {
        lcplx p(a[n].real(), a[n].imag());
        lcplx dp(0.0L);
        for (std::size_t k = n; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + lcplx(a[k].real(), a[k].imag());
        }
        if (dp == lcplx(0.0L)) break;
        const lcplx delta = p / dp;
        if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) break;
        z -= delta;
        if (std::abs(delta) <= 1e-19L * std::abs(z)) break;
    }
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

void balance(Eigen::MatrixXcd& m) {
    const Eigen::Index d = m.rows();
    constexpr double kGamma = 0.9;
    bool changed = true;
    for (int sweep = 0; changed && sweep < 100; ++sweep) {
        changed = false;
        for (Eigen::Index i = 0; i < d; ++i) {
            const double row = m.row(i).cwiseAbs().sum();
            const double col = m.col(i).cwiseAbs().sum();
            if (row == 0.0 || col == 0.0) continue;
            int exponent = 0;
            std::frexp(row / col, &exponent);
            exponent /= 2;
            if (exponent == 0) continue;
            const double scaled_col = std::ldexp(col, exponent);
            const double scaled_row = std::ldexp(row, -exponent);
            if (scaled_col + scaled_row < kGamma * (col + row)) {
                changed = true;
                m.row(i) *= std::ldexp(1.0, -exponent);
                m.col(i) *= std::ldexp(1.0, exponent);
            }
        }
    }
}

void validate(const CoefficientVector& c) {
    if (c.coeffs.size() < 2) throw InvalidArgument("root finding needs degree >= 1");
    for (const cplx& a : c.coeffs) {
        if (!finite(a)) throw InvalidArgument("coefficients must be finite");
    }
    if (c.leading() == cplx(0.0)) throw InvalidArgument("leading coefficient a_n must be nonzero");
}

}  // namespace

cplx compensated_horner(std::span<const cplx> a, cplx x) {
    const std::size_t n = a.size() - 1;
    double sr = a[n].real(), si = a[n].imag();
    double er = 0.0, ei = 0.0;
    const double xr = x.real(), xi = x.imag();
    for (std::size_t k = n; k-- > 0;) {
        // (sr + i si)(xr + i xi) as an unevaluated sum p + e + f + g.
        double z1, h1, z2, h2, z3, h3, z4, h4, z5, h5, z6, h6;
        two_prod(sr, xr, z1, h1);
        two_prod(si, xi, z2, h2);
        two_prod(sr, xi, z3, h3);
        two_prod(si, xr, z4, h4);
        two_sum(z1, -z2, z5, h5);
        two_sum(z3, z4, z6, h6);
        double s_re, sigma_re, s_im, sigma_im;
        two_sum(z5, a[k].real(), s_re, sigma_re);
        two_sum(z6, a[k].imag(), s_im, sigma_im);
        const double tr = er * xr - ei * xi;
        const double ti = er * xi + ei * xr;
        er = tr + ((h1 - h2) + h5 + sigma_re);
        ei = ti + ((h3 + h4) + h6 + sigma_im);
        sr = s_re;
        si = s_im;
    }
    return {sr + er, si + ei};
}

CoefficientVector expand_from_roots(std::span<const cplx> roots, cplx leading) {
    if (leading == cplx(0.0)) throw InvalidArgument("leading coefficient must be nonzero");
    CoefficientVector out;
    out.coeffs.reserve(roots.size() + 1);
    out.coeffs.push_back(leading);
    for (const cplx& r : roots) {
        out.coeffs.push_back(0.0);
        for (std::size_t k = out.coeffs.size() - 1; k > 0; --k) out.coeffs[k] = out.coeffs[k - 1] - r * out.coeffs[k];
        out.coeffs[0] = -r * out.coeffs[0];
    }
    return out;
}

NormalizedCoefficients tilde_a(const CoefficientVector& c) {
    if (c.coeffs.empty() || c.leading() == cplx(0.0)) throw InvalidArgument("tilde_a needs a_n != 0");
    NormalizedCoefficients out;
    out.entries.reserve(c.coeffs.size());
    const cplx lead = c.leading();
    for (std::size_t k = 0; k + 1 < c.coeffs.size(); ++k) out.entries.push_back(c.coeffs[k] / lead);
    out.entries.push_back(1.0);
    return out;
}

RootMethod parse_root_method(std::string_view text) {
    if (text == "aberth") return RootMethod::aberth;
    if (text == "companion") return RootMethod::companion;
    if (text == "auto") return RootMethod::automatic;
    throw InvalidArgument("unknown root method '" + std::string(text) + "'");
}

double backward_error(std::span<const cplx> a, cplx z) {
    if (std::abs(z) <= 1.0) {
        double abs_sum = 0.0;
        for (const cplx& c : a) abs_sum += std::abs(c);
        return std::abs(compensated_horner(a, z)) / abs_sum;
    }
    const std::vector<cplx> rev = reversed(a);
    const cplx w = 1.0 / z;
    return std::abs(compensated_horner(rev, w)) / abs_horner(rev, std::abs(w));
}

ResidualReport residual_report(const CoefficientVector& c, const RootSet& roots) {
    if (roots.roots.size() != c.degree())
        throw InvalidArgument("residual_report: root count does not match the degree");
    ResidualReport report;
    report.per_root.reserve(roots.roots.size());
    for (const cplx& z : roots.roots) {
        const double be = backward_error(c.coeffs, z);
        report.per_root.push_back(be);
        report.max_backward_error = std::max(report.max_backward_error, be);
    }
    // Componentwise, against |lead| * e_k(|z|), the scale of the expansion's own rounding.
    const CoefficientVector rebuilt = expand_from_roots(roots.roots, c.leading());
    std::vector<cplx> moduli(roots.roots.size());
    std::transform(roots.roots.begin(), roots.roots.end(), moduli.begin(), [](const cplx& z) { return cplx(-std::abs(z), 0.0); });
    const CoefficientVector scale = expand_from_roots(moduli, std::abs(c.leading()));
    for (std::size_t k = 0; k < c.coeffs.size(); ++k) {
        const double err = std::abs(rebuilt.coeffs[k] - c.coeffs[k]);
        const double s = std::abs(scale.coeffs[k]);
        report.coefficient_error = std::max(report.coefficient_error, s > 0.0 ? err / s : err);
    }
    return report;
}

std::vector<cplx> companion_roots(std::span<const cplx> a) {
    const std::size_t d = a.size() - 1;
    if (d < 1) throw InvalidArgument("companion_roots needs degree >= 1");
    if (d > kCompanionMaxDegree) throw InvalidArgument("companion solver is limited to degree <= 512");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -a[i] / a[d];
    balance(m);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) throw NumericFailure("companion eigen-solver failed", "Eigen ComplexEigenSolver info != Success");
    std::vector<cplx> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    return out;
}

void sort_roots(std::vector<cplx>& roots) {
    std::sort(roots.begin(), roots.end(), [](const cplx& x, const cplx& y) {
        return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    });
}

void enforce_conjugate_pairs(std::vector<cplx>& roots) {
    std::vector<cplx> real, upper, lower;
    for (const cplx& z : roots) {
        const double threshold = 1e-12 * (1.0 + std::abs(z));
        if (std::abs(z.imag()) < threshold) {
            real.push_back(z.real());
        } else if (z.imag() > 0.0) {
            upper.push_back(z);
        } else {
            lower.push_back(z);
        }
    }
    // Unmatched extras are the closest to the axis; they must be real.
    auto by_abs_imag = [](const cplx& x, const cplx& y) { return std::abs(x.imag()) < std::abs(y.imag()); };
    auto shed = [&](std::vector<cplx>& big, std::size_t target) {
        std::sort(big.begin(), big.end(), by_abs_imag);
        while (big.size() > target) {
            real.push_back(big.front().real());
            big.erase(big.begin());
        }
    };
    if (upper.size() > lower.size()) shed(upper, lower.size());
    if (lower.size() > upper.size()) shed(lower, upper.size());

    const int m = static_cast<int>(upper.size());
    std::vector<double> cost(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) cost[static_cast<std::size_t>(i) * m + j] = std::abs(upper[i] - std::conj(lower[j]));
    const Assignment match = min_cost_assignment(cost, m);

    roots.clear();
    for (const cplx& x : real) roots.push_back({x.real(), 0.0});
    for (int i = 0; i < m; ++i) {
        const cplx mean = 0.5 * (upper[i] + std::conj(lower[match.column_of_row[i]]));
        roots.push_back(mean);
        roots.push_back(std::conj(mean));
    }
}

RootSet find_roots(const CoefficientVector& c, RootMethod method, double tol) {
    RootOptions options;
    options.method = method;
    options.tol = tol;
    return find_roots(c, options);
}

RootSet find_roots(const CoefficientVector& c, const RootOptions& options) {
    validate(c);
    const std::size_t n = c.degree();
    const bool real_coeffs =
        std::all_of(c.coeffs.begin(), c.coeffs.end(), [](const cplx& a) { return a.imag() == 0.0; });

    std::size_t zeros = 0;
    while (c.coeffs[zeros] == cplx(0.0)) ++zeros;

    // Power-of-two scaling is exact; it only moves the exponent range.
    double max_abs = 0.0;
    for (const cplx& a : c.coeffs) max_abs = std::max(max_abs, std::abs(a));
    int exponent = 0;
    std::frexp(max_abs, &exponent);
    std::vector<cplx> work(c.coeffs.begin() + static_cast<std::ptrdiff_t>(zeros), c.coeffs.end());
    for (cplx& a : work) a = {std::ldexp(a.real(), -exponent), std::ldexp(a.imag(), -exponent)};

    std::vector<cplx> roots;
    bool converged = true;
    if (work.size() > 1) {
        RootMethod chosen = options.method;
        if (chosen == RootMethod::companion) {
            roots = companion_roots(work);
        } else {
            AberthResult result = aberth(work, options.max_iterations);
            roots = std::move(result.roots);
            converged = result.converged;
            if (!converged && chosen == RootMethod::automatic && work.size() - 1 <= kCompanionMaxDegree) {
                roots = companion_roots(work);
                converged = true;
            }
        }
    }
    roots.insert(roots.end(), zeros, cplx(0.0));

    RootSet out;
    out.leading = c.leading();
    auto finish = [&] {
        if (real_coeffs) enforce_conjugate_pairs(roots);
        sort_roots(roots);
        out.roots = roots;
        out.max_backward_error = residual_report(c, out).max_backward_error;
        out.residual_certified = out.max_backward_error <= options.tol;
    };
    finish();

    if (!out.residual_certified && options.method != RootMethod::companion) {
        for (cplx& z : roots) {
            if (backward_error(c.coeffs, z) > options.tol) z = polish_long_double(c.coeffs, z);
        }
        finish();
    }
    if (!converged && !out.residual_certified) {
        throw ConvergenceFailure("Aberth iteration did not converge within " + std::to_string(options.max_iterations) +
                                     " iterations (degree " + std::to_string(n) + ")",
                                 out.roots, residual_report(c, out).per_root);
    }
    return out;
}

}  // namespace kaczeros
