#pragma once

#include <string_view>
#include <vector>

#include "kaczeros/types.hpp"

namespace kaczeros {

/// Uniform-weight atomic probability measure (1/n on each atom).
///
/// `reference_circle` marks the uniform measure on the unit circle; its atoms
/// are an equally spaced discretization used where no closed form is
/// available, while the BL dictionary integrates it exactly.
struct EmpiricalMeasure {
    std::vector<cplx> atoms;
    bool reference_circle = false;

    std::size_t size() const noexcept { return atoms.size(); }
    double weight() const noexcept { return 1.0 / static_cast<double>(atoms.size()); }
};

inline constexpr std::size_t kDefaultCirclePoints = 4096;

EmpiricalMeasure measure_from_roots(const RootSet& roots);
EmpiricalMeasure measure_from_atoms(std::vector<cplx> atoms);
/// N equally spaced atoms e^{2 pi i k / N}, k = 0..N-1.
std::vector<cplx> roots_of_unity(std::size_t count);
EmpiricalMeasure unit_circle_measure(std::size_t points = kDefaultCirclePoints);

EmpiricalMeasure conjugate(const EmpiricalMeasure& mu);
EmpiricalMeasure rotate(const EmpiricalMeasure& mu, double angle);

/// Test-function dictionary "fourier-radial-v1":
///   f_{j,k}(r e^{i theta}) = s_{j,k} * tent_j(r) * e^{i k theta},  0 <= k <= 16,
/// with 32 tents tent_j(r) = max(0, 1 - |r - c_j| / w_j):
///   j = 0..7    coarse: c_j = j/2, w_j = 1
///   j = 8..31   fine:   c_j = 1 + (j - 20)/24, w_j = 1/12
/// and s_{j,k} = min(1, w_j, c_j/k) so that sup|f| <= 1 and Lip(f) <= 1 as a
/// map C -> C (k >= 1 requires c_j >= w_j so f is continuous at 0).
/// Negative k give the same moduli as +k for real tents and are omitted.
/// Every member is admissible, so the dual value is a lower bound of the BL
/// distance; it is exactly rotation invariant.
inline constexpr std::string_view kDictionaryId = "fourier-radial-v1";
inline constexpr int kDictionaryModes = 16;
inline constexpr int kDictionaryTents = 32;

struct DictionaryFunction {
    double center;
    double half_width;
    int mode;
    double scale;
};

/// The admissible (tent, mode) pairs with their normalizing scales.
const std::vector<DictionaryFunction>& bl_dictionary();

struct BLDistance {
    double value = 0.0;
    std::string_view dictionary = kDictionaryId;
    /// Index into bl_dictionary() of the maximizing function.
    std::size_t argmax = 0;
};

BLDistance dbl_distance_report(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);
double dbl_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

/// Fraction of atoms with |Im z| <= tol (1 + |z|).
double real_fraction(const EmpiricalMeasure& mu, double tol);

/// dbl_distance(mu, conj(mu)).
double conj_symmetry_defect(const EmpiricalMeasure& mu);

}  // namespace kaczeros
