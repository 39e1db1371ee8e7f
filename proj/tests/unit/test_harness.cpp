#include <doctest.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <string>

#include "kaczeros/errors.hpp"
#include "kaczeros/harness.hpp"
#include "kaczeros/io.hpp"

using namespace kaczeros;

namespace {

ExperimentSpec spec_for(const CoefficientLaw& law, std::vector<std::size_t> degrees, std::size_t replicas, std::uint64_t seed) {
    ExperimentSpec spec;
    spec.law = law;
    spec.degrees = std::move(degrees);
    spec.replicas = replicas;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("experiment validation") {
    ExperimentSpec spec = spec_for(CoefficientLaw::complex_gaussian(), {8, 4}, 2, 1);
    CHECK_THROWS_AS(spec.validate(), InvalidConfiguration);
    spec.degrees = {};
    CHECK_THROWS_AS(spec.validate(), InvalidConfiguration);
    spec.degrees = {4, 8};
    spec.replicas = 0;
    CHECK_THROWS_AS(spec.validate(), InvalidConfiguration);
    spec.replicas = 1;
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("parallel_for visits every index once") {
    for (unsigned threads : {1u, 2u, 5u, 16u}) {
        std::vector<std::atomic<int>> hits(37);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) CHECK(h.load() == 1);
    }
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                        if (i == 4) throw InvalidArgument("boom");
                    }),
                    InvalidArgument);
}

TEST_CASE("convergence scan is deterministic across thread counts") {
    ExperimentSpec spec = spec_for(CoefficientLaw::real_gaussian(), {8, 32}, 5, 99);
    spec.threads = 1;
    const std::string one = io::dump(io::to_json(run_convergence_scan(spec)));
    spec.threads = 4;
    const ConvergenceReport four = run_convergence_scan(spec);
    CHECK(io::dump(io::to_json(four)) == one);
    CHECK(four.rows.size() == 10);
    CHECK(four.summary.size() == 2);
    spec.seed = 100;
    CHECK(io::dump(io::to_json(run_convergence_scan(spec))) != one);
}

TEST_CASE("convergence scan distances shrink with degree") {
    const ConvergenceReport r = run_convergence_scan(spec_for(CoefficientLaw::complex_gaussian(), {16, 256}, 4, 5));
    CHECK(r.summary[1].mean_dbl < r.summary[0].mean_dbl);
    CHECK(r.summary[0].mean_real_fraction == 0.0);
    for (const auto& row : r.rows) CHECK(row.max_backward_error < 1e-10);
}

TEST_CASE("failed replicas are kept as typed rows") {
    ExperimentSpec spec = spec_for(CoefficientLaw::complex_gaussian(), {20, 30}, 3, 1);
    spec.root_options.max_iterations = 1;
    spec.root_options.tol = 1e-300;
    const ConvergenceReport r = run_convergence_scan(spec);
    REQUIRE(r.rows.size() == 6);
    for (const auto& row : r.rows) {
        CHECK(row.status == ReplicaStatus::convergence_failure);
        CHECK_FALSE(row.error.empty());
    }
    CHECK(r.summary[0].failed == 3);
    spec.strict = true;
    try {
        (void)run_convergence_scan(spec);
        FAIL("expected ConvergenceFailure");
    } catch (const ConvergenceFailure& e) {
        CHECK(std::string(e.what()).find("degree 20 replica 0") != std::string::npos);
    }
}

TEST_CASE("density oracle at degree one") {
    const GoodnessOfFit fit = density_oracle_compare(CoefficientLaw::complex_gaussian(), 1, 20000, 3);
    CHECK(fit.panels.size() == 2);
    CHECK(fit.max_abs_z < 5.0);
    CHECK(fit.panels[0].raw_mass == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(density_oracle_compare(CoefficientLaw::uniform_disk(1.0), 1, 100, 1), InvalidArgument);
    CHECK_THROWS_AS(density_oracle_compare(CoefficientLaw::exponential(), 3, 100, 1), InvalidArgument);
}

TEST_CASE("density oracle at degree two reports pair counts") {
    const GoodnessOfFit fit = density_oracle_compare(CoefficientLaw::exponential(), 2, 20000, 4);
    REQUIRE(fit.panels.size() == 2);
    CHECK(fit.panels[1].name == "pair count");
    CHECK(fit.panels[1].expected[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(fit.max_abs_z < 5.0);
}

TEST_CASE("density ratio scan") {
    const LdpReport self = ldp_ratio_scan(spec_for(CoefficientLaw::exponential(), {4, 12}, 3, 2), Field::positive);
    for (const auto& s : self.summary) CHECK(s.max_abs_ratio < 1e-12);

    const LdpReport disk = ldp_ratio_scan(spec_for(CoefficientLaw::uniform_disk(1.0), {8, 16, 32}, 4, 3), Field::complex);
    CHECK(disk.rows.size() == 12);
    CHECK(disk.fitted_c >= disk.fitted_c_small);
    const LdpReport power = ldp_ratio_scan(spec_for(CoefficientLaw::power_disk(1.0, 1.0), {8, 16, 32}, 4, 3), Field::complex);
    for (const auto& row : power.rows) {
        CHECK(row.status == ReplicaStatus::ok);
        CHECK(std::isfinite(row.ratio));
    }

    CHECK_THROWS_AS(ldp_ratio_scan(spec_for(CoefficientLaw::exponential(), {4}, 1, 1), Field::complex), InvalidArgument);
}

TEST_CASE("a degree-512 replica stays within the time budget") {
    const ExperimentSpec spec = spec_for(CoefficientLaw::complex_gaussian(), {512}, 1, 1);
    const auto start = std::chrono::steady_clock::now();
    const ConvergenceRow row = convergence_replica(spec, 512, 0);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(row.status == ReplicaStatus::ok);
    CHECK(seconds < 2.0);
}
