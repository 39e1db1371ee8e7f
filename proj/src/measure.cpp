#include "kaczeros/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "kaczeros/errors.hpp"

namespace kaczeros {
namespace {

double tent(double r, double center, double half_width) {
    return std::max(0.0, 1.0 - std::abs(r - center) / half_width);
}

std::vector<DictionaryFunction> build_dictionary() {
    std::vector<DictionaryFunction> out;
    auto add_tent = [&](double center, double half_width) {
        out.push_back({center, half_width, 0, std::min(1.0, half_width)});
        if (center < half_width) return;
        for (int k = 1; k <= kDictionaryModes; ++k)
            out.push_back({center, half_width, k, std::min({1.0, half_width, center / k})});
    };
    for (int j = 0; j < 8; ++j) add_tent(0.5 * j, 1.0);
    for (int j = 8; j < kDictionaryTents; ++j) add_tent(1.0 + (j - 20) / 24.0, 1.0 / 12.0);
    return out;
}

std::vector<cplx> moments(const EmpiricalMeasure& mu) {
    const auto& dict = bl_dictionary();
    std::vector<cplx> m(dict.size(), 0.0);
    if (mu.reference_circle) {
        // Uniform measure on |z| = 1: only the k = 0 modes survive.
        for (std::size_t d = 0; d < dict.size(); ++d) {
            if (dict[d].mode == 0) m[d] = dict[d].scale * tent(1.0, dict[d].center, dict[d].half_width);
        }
        return m;
    }
    std::array<cplx, kDictionaryModes + 1> powers{};
    for (const cplx& z : mu.atoms) {
        const double r = std::abs(z);
        const cplx u = r > 0.0 ? z / r : cplx(1.0, 0.0);
        powers[0] = 1.0;
        for (int k = 1; k <= kDictionaryModes; ++k) powers[k] = powers[k - 1] * u;
        for (std::size_t d = 0; d < dict.size(); ++d) {
            const double t = tent(r, dict[d].center, dict[d].half_width);
            if (t > 0.0) m[d] += t * powers[dict[d].mode];
        }
    }
    const double w = mu.weight();
    for (std::size_t d = 0; d < dict.size(); ++d) m[d] *= dict[d].scale * w;
    return m;
}

void require_atoms(const EmpiricalMeasure& mu) {
    if (mu.atoms.empty()) throw InvalidArgument("empirical measure needs at least one atom");
}

}  // namespace

const std::vector<DictionaryFunction>& bl_dictionary() {
    static const std::vector<DictionaryFunction> dict = build_dictionary();
    return dict;
}

EmpiricalMeasure measure_from_roots(const RootSet& roots) { return measure_from_atoms(roots.roots); }

EmpiricalMeasure measure_from_atoms(std::vector<cplx> atoms) {
    if (atoms.empty()) throw InvalidArgument("empirical measure needs at least one atom");
    return EmpiricalMeasure{std::move(atoms), false};
}

std::vector<cplx> roots_of_unity(std::size_t count) {
    std::vector<cplx> out(count);
    for (std::size_t k = 0; k < count; ++k)
        out[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count));
    return out;
}

EmpiricalMeasure unit_circle_measure(std::size_t points) {
    if (points == 0) throw InvalidArgument("circle discretization needs at least one point");
    return EmpiricalMeasure{roots_of_unity(points), true};
}

EmpiricalMeasure conjugate(const EmpiricalMeasure& mu) {
    EmpiricalMeasure out = mu;
    for (cplx& z : out.atoms) z = std::conj(z);
    return out;
}

EmpiricalMeasure rotate(const EmpiricalMeasure& mu, double angle) {
    EmpiricalMeasure out = mu;
    const cplx phase = std::polar(1.0, angle);
    for (cplx& z : out.atoms) z *= phase;
    return out;
}

BLDistance dbl_distance_report(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
    require_atoms(mu);
    require_atoms(nu);
    BLDistance out;
    if (mu.reference_circle && nu.reference_circle) return out;
    const std::vector<cplx> a = moments(mu);
    const std::vector<cplx> b = moments(nu);
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double gap = std::abs(a[d] - b[d]);
        if (gap > out.value) {
            out.value = gap;
            out.argmax = d;
        }
    }
    return out;
}

double dbl_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
    return dbl_distance_report(mu, nu).value;
}

double real_fraction(const EmpiricalMeasure& mu, double tol) {
    require_atoms(mu);
    if (!(tol >= 0.0)) throw InvalidArgument("real_fraction needs tol >= 0");
    std::size_t count = 0;
    for (const cplx& z : mu.atoms) {
        if (std::abs(z.imag()) <= tol * (1.0 + std::abs(z))) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(mu.size());
}

double conj_symmetry_defect(const EmpiricalMeasure& mu) { return dbl_distance(mu, conjugate(mu)); }

}  // namespace kaczeros
