#pragma once

#include <optional>

#include "kaczeros/measure.hpp"
#include "kaczeros/types.hpp"

namespace kaczeros {

/// Ensemble tag of a rate report: the three Gaussian/exponential ensembles or the
/// conjectural power-disk functional I_alpha.
enum class RateEnsemble { C, R, Rplus, alpha };

std::string_view to_string(RateEnsemble e) noexcept;
RateEnsemble rate_ensemble_from_field(Field field) noexcept;

struct RateFlags {
    bool symmetry_violation = false;
    bool membership_unchecked = false;
    bool atom_on_circle_regularized = false;
    bool coincident_atoms = false;
};

/// Invariants: for C, value = energy_term + sup_term; for R without a symmetry
/// violation (and for R+), value = (energy_term + sup_term) / 2.
/// For I_alpha, sup_term is already multiplied by (2 + alpha).
struct RateReport {
    double value = 0.0;
    double energy_term = 0.0;
    double sup_term = 0.0;
    double sup_argmax_angle = 0.0;
    RateEnsemble ensemble = RateEnsemble::C;
    double alpha = 0.0;
    RateFlags flags;
};

struct EnergyResult {
    double value = 0.0;  // +inf for coincident atoms
    bool coincident = false;
};

/// -(1/N^2) sum_{i != j} log|z_i - z_j| (diagonal excluded; one atom gives 0).
EnergyResult log_energy_report(const EmpiricalMeasure& mu);
double log_energy(const EmpiricalMeasure& mu);

struct CircleSupOptions {
    int grid = 4096;
    int refine_top = 3;
};

struct CircleSup {
    double value = 0.0;
    double argmax_angle = 0.0;
    bool regularized = false;
};

/// sup over |z| = 1 of c * integral log|z - w| dmu(w), c = 2 when `doubling`.
/// Grid search followed by golden-section refinement around the best local
/// maxima. Atoms closer than 1e-9 to an evaluation point contribute log(d + 1e-12).
CircleSup circle_sup(const EmpiricalMeasure& mu, bool doubling, const CircleSupOptions& options = {});

/// I_C, I_R or I_R+ (simplified form). For R the measure must be conjugation
/// invariant up to `tol` in the BL dictionary metric, otherwise the value is +inf.
RateReport rate_I(Field ensemble, const EmpiricalMeasure& mu, double tol = 1e-10,
                  const CircleSupOptions& options = {});

/// I_C through the compactified kernel log|z-w| - log(1+|z|^2)/2 - log(1+|w|^2)/2
/// and sup of log|z-w|^2 - log(1+|w|^2). Only the singular log|z-w| part is
/// dropped on the diagonal, so this agrees with rate_I(C, .) for atomic measures.
RateReport rate_I_compactified(const EmpiricalMeasure& mu, const CircleSupOptions& options = {});

/// -iint log|z-w| + (2 + alpha) sup_{S^1} int log|z-w|.
RateReport rate_I_alpha(double alpha, const EmpiricalMeasure& mu, const CircleSupOptions& options = {});

}  // namespace kaczeros
