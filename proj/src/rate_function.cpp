#include "kaczeros/rate_function.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "kaczeros/errors.hpp"
#include "kaczeros/summation.hpp"

namespace kaczeros {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_atoms(const EmpiricalMeasure& mu) {
    if (mu.atoms.empty()) throw InvalidArgument("rate functionals need at least one atom");
}

// Mean over atoms of kernel(z, w) at z = e^{i theta}.
using Kernel = std::function<double(cplx z, cplx w, bool& regularized)>;

double average_kernel(std::span<const cplx> atoms, double theta, const Kernel& kernel, bool& regularized) {
    const cplx z = std::polar(1.0, theta);
    std::vector<double> terms(atoms.size());
    for (std::size_t j = 0; j < atoms.size(); ++j) terms[j] = kernel(z, atoms[j], regularized);
    return pairwise_sum(terms) / static_cast<double>(atoms.size());
}

// log|z - w| with the near-atom regularization.
double log_distance(cplx z, cplx w, bool& regularized) {
    const double d = std::abs(z - w);
    if (d < 1e-9) {
        regularized = true;
        return std::log(d + 1e-12);
    }
    return std::log(d);
}

CircleSup maximize_on_circle(std::span<const cplx> atoms, const Kernel& kernel, const CircleSupOptions& options) {
    if (options.grid < 3) throw InvalidArgument("circle_sup grid needs at least 3 points");
    const int g = options.grid;
    CircleSup out;
    std::vector<double> values(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) values[i] = average_kernel(atoms, kTwoPi * i / g, kernel, out.regularized);

    std::vector<int> peaks;
    for (int i = 0; i < g; ++i) {
        const double left = values[(i + g - 1) % g];
        const double right = values[(i + 1) % g];
        if (values[i] >= left && values[i] >= right) peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return values[a] > values[b]; });
    if (peaks.size() > static_cast<std::size_t>(options.refine_top)) peaks.resize(options.refine_top);

    const int best_grid = static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
    out.value = values[best_grid];
    out.argmax_angle = kTwoPi * best_grid / g;

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int peak : peaks) {
        double lo = kTwoPi * (peak - 1) / g;
        double hi = kTwoPi * (peak + 1) / g;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = average_kernel(atoms, x1, kernel, out.regularized);
        double f2 = average_kernel(atoms, x2, kernel, out.regularized);
        for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
            if (f1 >= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = average_kernel(atoms, x1, kernel, out.regularized);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = average_kernel(atoms, x2, kernel, out.regularized);
            }
        }
        const double x = f1 >= f2 ? x1 : x2;
        const double f = std::max(f1, f2);
        if (f > out.value) {
            out.value = f;
            out.argmax_angle = x;
        }
    }
    out.argmax_angle = std::fmod(out.argmax_angle, kTwoPi);
    if (out.argmax_angle < 0.0) out.argmax_angle += kTwoPi;
    return out;
}

}  // namespace

std::string_view to_string(RateEnsemble e) noexcept {
    switch (e) {
        case RateEnsemble::C: return "C";
        case RateEnsemble::R: return "R";
        case RateEnsemble::Rplus: return "R+";
        case RateEnsemble::alpha: return "alpha";
    }
    return "?";
}

RateEnsemble rate_ensemble_from_field(Field field) noexcept {
    switch (field) {
        case Field::complex: return RateEnsemble::C;
        case Field::real: return RateEnsemble::R;
        case Field::positive: return RateEnsemble::Rplus;
    }
    return RateEnsemble::C;
}

EnergyResult log_energy_report(const EmpiricalMeasure& mu) {
    require_atoms(mu);
    const PairLogSum s = pair_log_sum(mu.atoms);
    if (s.coincident) return {kInf, true};
    const double n = static_cast<double>(mu.size());
    return {-2.0 * s.value / (n * n), false};
}

double log_energy(const EmpiricalMeasure& mu) { return log_energy_report(mu).value; }

CircleSup circle_sup(const EmpiricalMeasure& mu, bool doubling, const CircleSupOptions& options) {
    require_atoms(mu);
    CircleSup out = maximize_on_circle(mu.atoms, log_distance, options);
    if (doubling) out.value *= 2.0;
    return out;
}

RateReport rate_I(Field ensemble, const EmpiricalMeasure& mu, double tol, const CircleSupOptions& options) {
    const EnergyResult energy = log_energy_report(mu);
    const CircleSup sup = circle_sup(mu, true, options);
    RateReport report;
    report.ensemble = rate_ensemble_from_field(ensemble);
    report.energy_term = energy.value;
    report.sup_term = sup.value;
    report.sup_argmax_angle = sup.argmax_angle;
    report.flags.coincident_atoms = energy.coincident;
    report.flags.atom_on_circle_regularized = sup.regularized;
    const double full = energy.value + sup.value;
    switch (ensemble) {
        case Field::complex: report.value = full; break;
        case Field::real:
            if (conj_symmetry_defect(mu) <= tol) {
                report.value = 0.5 * full;
            } else {
                report.value = kInf;
                report.flags.symmetry_violation = true;
            }
            break;
        case Field::positive:
            report.value = 0.5 * full;
            report.flags.membership_unchecked = true;
            break;
    }
    return report;
}

RateReport rate_I_compactified(const EmpiricalMeasure& mu, const CircleSupOptions& options) {
    require_atoms(mu);
    const std::size_t n = mu.size();
    std::vector<double> lift(n);
    for (std::size_t i = 0; i < n; ++i) lift[i] = std::log1p(std::norm(mu.atoms[i]));

    // Chordal form of the kernel, off the diagonal.
    RateReport report;
    report.ensemble = RateEnsemble::C;
    std::vector<double> rows(n, 0.0);
    for (std::size_t i = 0; i < n && !report.flags.coincident_atoms; ++i) {
        std::vector<double> terms;
        terms.reserve(n - i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d2 = std::norm(mu.atoms[i] - mu.atoms[j]);
            if (d2 == 0.0) {
                report.flags.coincident_atoms = true;
                break;
            }
            terms.push_back(0.5 * (std::log(d2) - lift[i] - lift[j]));
        }
        rows[i] = 2.0 * pairwise_sum(terms) - lift[i];
    }
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    report.energy_term = report.flags.coincident_atoms ? kInf : -pairwise_sum(rows) / nn;

    const Kernel lifted = [](cplx z, cplx w, bool& regularized) {
        return 2.0 * log_distance(z, w, regularized) - std::log1p(std::norm(w));
    };
    const CircleSup sup = maximize_on_circle(mu.atoms, lifted, options);
    report.sup_term = sup.value;
    report.sup_argmax_angle = sup.argmax_angle;
    report.flags.atom_on_circle_regularized = sup.regularized;
    report.value = report.energy_term + report.sup_term;
    return report;
}

RateReport rate_I_alpha(double alpha, const EmpiricalMeasure& mu, const CircleSupOptions& options) {
    if (!(alpha >= 0.0)) throw InvalidArgument("rate_I_alpha needs alpha >= 0");
    const EnergyResult energy = log_energy_report(mu);
    const CircleSup sup = circle_sup(mu, false, options);
    RateReport report;
    report.ensemble = RateEnsemble::alpha;
    report.alpha = alpha;
    report.energy_term = energy.value;
    report.sup_term = (2.0 + alpha) * sup.value;
    report.sup_argmax_angle = sup.argmax_angle;
    report.flags.coincident_atoms = energy.coincident;
    report.flags.atom_on_circle_regularized = sup.regularized;
    report.value = report.energy_term + report.sup_term;
    return report;
}

}  // namespace kaczeros
