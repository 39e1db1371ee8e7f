#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kaczeros/coeff_laws.hpp"
#include "kaczeros/errors.hpp"

using namespace kaczeros;
using std::numbers::pi;

TEST_CASE("log densities at reference points") {
    CHECK(log_density(CoefficientLaw::complex_gaussian(), 0.0) == doctest::Approx(-std::log(pi)).epsilon(1e-15));
    CHECK(log_density(CoefficientLaw::exponential(), 2.0) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(std::isinf(log_density(CoefficientLaw::uniform_disk(1.0), cplx(0.0, 2.0))));
    CHECK(log_density(CoefficientLaw::uniform_disk(1.0), cplx(0.3, 0.4)) == doctest::Approx(-std::log(pi)));
    CHECK(log_density(CoefficientLaw::real_gaussian(), 1.0) == doctest::Approx(-0.5 - 0.5 * std::log(2 * pi)));
    // Off-field points have zero density.
    CHECK(log_density(CoefficientLaw::exponential(), -1.0) == -INFINITY);
    CHECK(log_density(CoefficientLaw::real_gaussian(), cplx(0.0, 1.0)) == -INFINITY);
}

TEST_CASE("sampled coefficients respect the support") {
    const CoefficientVector disk = sample_coeffs(CoefficientLaw::uniform_disk(1.0), 2, 42);
    CHECK(disk.coeffs.size() == 3);
    for (const cplx& a : disk.coeffs) CHECK(std::abs(a) <= 1.0);
    const CoefficientVector e = sample_coeffs(CoefficientLaw::exponential(), 9, 7);
    CHECK(e.coeffs.size() == 10);
    for (const cplx& a : e.coeffs) {
        CHECK(a.real() > 0.0);
        CHECK(a.imag() == 0.0);
    }
    CHECK(e.field == Field::positive);
}

TEST_CASE("complex gaussian sample mean is close to zero") {
    const std::size_t n = 100000;
    const CoefficientVector c = sample_coeffs(CoefficientLaw::complex_gaussian(), n - 1, 5);
    cplx mean = 0.0;
    for (const cplx& a : c.coeffs) mean += a;
    mean /= static_cast<double>(n);
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sampling is deterministic in the seed") {
    const auto law = CoefficientLaw::power_disk(1.0, 2.0, Field::real);
    CHECK(sample_coeffs(law, 16, 3).coeffs == sample_coeffs(law, 16, 3).coeffs);
    CHECK(sample_coeffs(law, 16, 3).coeffs != sample_coeffs(law, 16, 4).coeffs);
}

TEST_CASE("custom law without sampler cannot be sampled") {
    const auto law = CoefficientLaw::custom("cauchy", Field::real, [](cplx x) { return -std::log(pi * (1 + std::norm(x))); });
    CHECK_FALSE(law.has_sampler());
    CHECK_THROWS_AS(sample_coeffs(law, 3, 1), UnsupportedOperation);
}

TEST_CASE("built-in densities integrate to one") {
    for (const auto& law : {CoefficientLaw::complex_gaussian(), CoefficientLaw::real_gaussian(), CoefficientLaw::exponential(),
                            CoefficientLaw::uniform_disk(1.0), CoefficientLaw::uniform_disk(2.5, Field::real),
                            CoefficientLaw::uniform_disk(0.5, Field::positive), CoefficientLaw::power_disk(1.0, 1.0),
                            CoefficientLaw::power_disk(0.5, 2.0, Field::real), CoefficientLaw::power_disk(3.0, 1.5, Field::positive)}) {
        INFO(law.name(), " ", law.short_name());
        CHECK(normalization_integral(law) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("envelope checks") {
    CHECK(check_envelope(CoefficientLaw::complex_gaussian(), {2.0, 1.0, 0.0}).holds);
    CHECK(check_envelope(CoefficientLaw::uniform_disk(1.0), {1.0, 1.0, 1.0 - std::log(pi)}).holds);
    CHECK_FALSE(check_envelope(CoefficientLaw::uniform_disk(1.0), {1.0, 1.0, 0.99 - std::log(pi)}).holds);
    for (const auto& law : {CoefficientLaw::complex_gaussian(), CoefficientLaw::real_gaussian(), CoefficientLaw::exponential(),
                            CoefficientLaw::uniform_disk(2.0, Field::real)})
        CHECK(check_envelope(law, *law.envelope()).holds);

    const auto cauchy = CoefficientLaw::custom("cauchy", Field::real, [](cplx x) { return -std::log(pi * (1 + std::norm(x))); });
    // At rho = 0.5 the tail only crosses the bound near radius 120, past the default grid.
    CHECK(check_envelope(cauchy, {0.5, 1.0, 0.0}).holds);
    const ProbeGrid wide{512, 64, 1e-6, 1e4};
    for (double rho : {0.5, 1.0, 2.0}) {
        const EnvelopeReport r = check_envelope(cauchy, {rho, 1.0, 0.0}, wide);
        CHECK_FALSE(r.holds);
        REQUIRE(r.first_violation.has_value());
        CHECK(std::abs(*r.first_violation) > 1.0);
    }
    CHECK_THROWS_AS(EnvelopeParams(0.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("c(lambda) closed forms") {
    for (double lambda : {1.0, 2.0, 5.0}) {
        const CLambdaResult disk = c_lambda(CoefficientLaw::uniform_disk(1.0), 1.0, lambda);
        CHECK_FALSE(disk.divergent);
        CHECK(disk.value == doctest::Approx(std::pow(pi, lambda + 1.0)).epsilon(1e-10));
        const CLambdaResult e = c_lambda(CoefficientLaw::exponential(), 1.0, lambda);
        CHECK(e.value == doctest::Approx(std::expm1(lambda) / lambda).epsilon(1e-10));
    }
    // |x|^{-lambda alpha} on R: finite for lambda alpha < 1.
    const double alpha = 0.5, lambda = 1.0;
    const double z = 2.0 / (alpha + 1.0);  // normalizer on [-1, 1]
    const CLambdaResult finite = c_lambda(CoefficientLaw::power_disk(alpha, 1.0, Field::real), 1.0, lambda);
    CHECK_FALSE(finite.divergent);
    CHECK(finite.value == doctest::Approx(std::pow(z, lambda) * 2.0 / (1.0 - lambda * alpha)).epsilon(1e-8));
}

TEST_CASE("c(lambda) flags divergence") {
    CHECK(c_lambda(CoefficientLaw::power_disk(0.5, 1.0, Field::real), 1.0, 4.0).divergent);
    CHECK(c_lambda(CoefficientLaw::power_disk(0.5, 1.0, Field::real), 1.0, 2.0).divergent);
    CHECK(std::isinf(c_lambda(CoefficientLaw::power_disk(1.0, 1.0), 1.0, 2.0).value));
    CHECK_FALSE(c_lambda(CoefficientLaw::power_disk(1.0, 1.0), 1.0, 1.5).divergent);
}

TEST_CASE("law json round trip and validation") {
    for (const auto& law : {CoefficientLaw::complex_gaussian(), CoefficientLaw::real_gaussian(), CoefficientLaw::exponential(),
                            CoefficientLaw::uniform_disk(0.5, Field::real), CoefficientLaw::power_disk(1.0, 2.0)}) {
        const CoefficientLaw back = CoefficientLaw::from_json(law.to_json());
        CHECK(back.kind() == law.kind());
        CHECK(back.field() == law.field());
        CHECK(back.delta() == law.delta());
        CHECK(back.alpha() == law.alpha());
    }
    CHECK_THROWS_AS(CoefficientLaw::from_json({{"kind", "uniform-disk"}, {"params", {{"radius", 1.0}}}}), InvalidArgument);
    CHECK_THROWS_AS(CoefficientLaw::from_json({{"kind", "nope"}}), InvalidArgument);
    CHECK_THROWS_AS(CoefficientLaw::from_json({{"kind", "uniform-disk"}, {"params", {{"delta", -1.0}}}}), InvalidArgument);
    CHECK_THROWS_AS(CoefficientLaw::power_disk(-0.5, 1.0), InvalidArgument);
}

TEST_CASE("law tokens") {
    CHECK(CoefficientLaw::from_token("cgauss").kind() == LawKind::complex_gaussian);
    CHECK(CoefficientLaw::from_token("exp").field() == Field::positive);
    const auto d = CoefficientLaw::from_token("udisk:2:R");
    CHECK(d.delta() == 2.0);
    CHECK(d.field() == Field::real);
    const auto p = CoefficientLaw::from_token("pdisk:1");
    CHECK(p.alpha() == 1.0);
    CHECK(p.delta() == 1.0);
    CHECK_FALSE(p.satisfies_hypotheses());
    CHECK(CoefficientLaw::from_token("udisk").satisfies_hypotheses());
    CHECK_THROWS_AS(CoefficientLaw::from_token("udisk:x"), InvalidArgument);
    CHECK_THROWS_AS(CoefficientLaw::from_token("bogus"), InvalidArgument);
}
