#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kaczeros/measure.hpp"
#include "kaczeros/rate_function.hpp"
#include "kaczeros/rng.hpp"

using namespace kaczeros;
using std::numbers::pi;

namespace {

EmpiricalMeasure atoms(std::vector<cplx> z) { return measure_from_atoms(std::move(z)); }
EmpiricalMeasure unity(std::size_t n) { return atoms(roots_of_unity(n)); }

// Conjugation-symmetric configuration: m pairs plus r real atoms, inside radius 0.9.
EmpiricalMeasure symmetric_measure(std::uint64_t seed, std::size_t pairs, std::size_t reals) {
    PhiloxStream rng(seed, 5);
    std::vector<cplx> z;
    for (std::size_t i = 0; i < pairs; ++i) {
        const cplx w = std::polar(0.9 * rng.uniform(), pi * rng.uniform());
        z.push_back(w);
        z.push_back(std::conj(w));
    }
    for (std::size_t i = 0; i < reals; ++i) z.push_back(1.8 * rng.uniform() - 0.9);
    return atoms(std::move(z));
}

EmpiricalMeasure random_measure(std::uint64_t seed, std::size_t n) {
    PhiloxStream rng(seed, 6);
    std::vector<cplx> z;
    for (std::size_t i = 0; i < n; ++i) z.push_back(rng.complex_normal());
    return atoms(std::move(z));
}

}  // namespace

TEST_CASE("logarithmic energy closed forms") {
    CHECK(log_energy(unity(4)) == doctest::Approx(-std::log(4.0) / 4.0).epsilon(1e-15));
    CHECK(log_energy(atoms({0.0, 1.0})) == 0.0);
    CHECK(log_energy(atoms({0.0, 2.0})) == doctest::Approx(-std::log(2.0) / 2.0).epsilon(1e-15));
    CHECK(log_energy(atoms({cplx(0.3, 0.1)})) == 0.0);
    for (std::size_t n : {8, 100, 1000})
        CHECK(log_energy(unity(n)) == doctest::Approx(-std::log(static_cast<double>(n)) / n).epsilon(1e-12));
    const EnergyResult c = log_energy_report(atoms({1.0, 1.0, 2.0}));
    CHECK(c.coincident);
    CHECK(c.value == INFINITY);
}

TEST_CASE("supremum of the potential on the circle") {
    const CircleSup origin = circle_sup(atoms({0.0}), true);
    CHECK(std::abs(origin.value) < 1e-15);
    for (std::size_t n : {4, 7, 64, 1024}) {
        const CircleSup s = circle_sup(unity(n), true);
        CHECK(s.value == doctest::Approx(2.0 * std::log(2.0) / n).epsilon(1e-9));
        const double step = 2.0 * pi / n;
        const double offset = std::fmod(s.argmax_angle, step);
        CHECK(std::abs(offset - step / 2) < 1e-6);
    }
    const CircleSup far = circle_sup(atoms({2.0}), true);
    CHECK(far.value == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-12));
    CHECK(std::abs(std::remainder(far.argmax_angle - pi, 2 * pi)) < 1e-6);
    CHECK(circle_sup(atoms({2.0}), false).value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("atoms on the circle are regularized and flagged") {
    const CircleSup s = circle_sup(atoms({1.0}), true);
    CHECK(s.regularized);
    CHECK(s.value == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("I_C at roots of unity") {
    const RateReport four = rate_I(Field::complex, unity(4));
    CHECK(std::abs(four.value) < 1e-15);
    CHECK(four.value == doctest::Approx(four.energy_term + four.sup_term));
    for (std::size_t n : {4, 64, 1024}) {
        const double expected = (2.0 * std::log(2.0) - std::log(static_cast<double>(n))) / n;
        CHECK(std::abs(rate_I(Field::complex, unity(n)).value - expected) < 1e-12);
    }
}

TEST_CASE("I_R on symmetric and asymmetric configurations") {
    CHECK(std::abs(rate_I(Field::real, unity(4)).value) < 1e-15);
    const RateReport asym = rate_I(Field::real, atoms({cplx(0.0, 1.0)}));
    CHECK(asym.value == INFINITY);
    CHECK(asym.flags.symmetry_violation);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const EmpiricalMeasure mu = symmetric_measure(seed, 6, 3);
        const RateReport r = rate_I(Field::real, mu);
        CHECK_FALSE(r.flags.symmetry_violation);
        CHECK(r.value == doctest::Approx(0.5 * rate_I(Field::complex, mu).value).epsilon(1e-14));
    }
    const RateReport plus = rate_I(Field::positive, unity(4));
    CHECK(plus.flags.membership_unchecked);
    CHECK(std::abs(plus.value) < 1e-15);
}

TEST_CASE("I_alpha") {
    const RateReport two = rate_I_alpha(2.0, unity(4));
    CHECK(two.value == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-12));
    CHECK(two.ensemble == RateEnsemble::alpha);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const EmpiricalMeasure mu = random_measure(seed, 12);
        CHECK(std::abs(rate_I_alpha(0.0, mu).value - rate_I(Field::complex, mu).value) < 1e-12);
        if (circle_sup(mu, false).value > 0.0) {
            CHECK(rate_I_alpha(0.5, mu).value < rate_I_alpha(1.0, mu).value);
            CHECK(rate_I_alpha(1.0, mu).value < rate_I_alpha(3.0, mu).value);
        }
    }
}

TEST_CASE("compactified and simplified I_C agree") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const EmpiricalMeasure mu = random_measure(seed, 15);
        CHECK(std::abs(rate_I_compactified(mu).value - rate_I(Field::complex, mu).value) < 1e-9);
    }
    CHECK(std::abs(rate_I_compactified(unity(64)).value - rate_I(Field::complex, unity(64)).value) < 1e-9);
}

TEST_CASE("rate is invariant under rotation and atom order") {
    const EmpiricalMeasure mu = random_measure(3, 20);
    EmpiricalMeasure reversed = mu;
    std::reverse(reversed.atoms.begin(), reversed.atoms.end());
    const double v = rate_I(Field::complex, mu).value;
    CHECK(rate_I(Field::complex, reversed).value == doctest::Approx(v).epsilon(1e-13));
    CHECK(rate_I(Field::complex, rotate(mu, 1.1)).value == doctest::Approx(v).epsilon(1e-9));
}
