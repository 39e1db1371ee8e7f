#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kaczeros/coeff_laws.hpp"
#include "kaczeros/polynomial.hpp"
#include "kaczeros/types.hpp"

namespace kaczeros {

struct ExperimentSpec {
    CoefficientLaw law = CoefficientLaw::complex_gaussian();
    std::vector<std::size_t> degrees;
    std::size_t replicas = 1;
    std::uint64_t seed = 0;
    /// Worker count; 0 means hardware concurrency. Never affects results.
    unsigned threads = 1;
    RootOptions root_options{};
    /// Rethrow the first failing replica (in (degree, replica) order) instead
    /// of recording it as a failed row.
    bool strict = false;

    /// Throws InvalidConfiguration unless degrees are non-empty, positive and
    /// strictly ascending and replicas >= 1.
    void validate() const;
};

/// Independent stream of replica `replica` at degree `degree`.
PhiloxStream replica_stream(std::uint64_t seed, std::size_t degree, std::size_t replica) noexcept;

/// Runs task(i) for i in [0, count) on a statically partitioned worker pool.
/// Each index is handled exactly once; the first exception (lowest index) is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

enum class ReplicaStatus { ok, convergence_failure, numeric_failure };
std::string_view to_string(ReplicaStatus status) noexcept;

struct ConvergenceRow {
    std::size_t degree = 0;
    std::size_t replica = 0;
    ReplicaStatus status = ReplicaStatus::ok;
    double dbl = 0.0;
    double real_fraction = 0.0;
    double max_backward_error = 0.0;
    std::string error;
};

struct ConvergenceSummary {
    std::size_t degree = 0;
    double mean_dbl = 0.0;
    double max_dbl = 0.0;
    double mean_real_fraction = 0.0;
    std::size_t succeeded = 0;
    std::size_t failed = 0;
};

struct ConvergenceReport {
    nlohmann::json law;
    std::string law_name;
    std::uint64_t seed = 0;
    std::size_t replicas = 0;
    std::vector<ConvergenceSummary> summary;  // one per degree
    std::vector<ConvergenceRow> rows;         // degrees x replicas, (degree, replica) order
    double elapsed_seconds = 0.0;             // not part of the serialized report
};

/// Sample, find roots, and measure the BL distance of the zero measure to the
/// uniform measure on the unit circle, for every (degree, replica).
ConvergenceReport run_convergence_scan(const ExperimentSpec& spec);

/// One replica of the convergence scan (exposed for timing and tests).
ConvergenceRow convergence_replica(const ExperimentSpec& spec, std::size_t degree, std::size_t replica);

struct HistogramPanel {
    std::string name;
    std::string coordinate;
    std::vector<double> edges;
    std::vector<std::size_t> observed;
    /// Expected bin probabilities after numeric normalization.
    std::vector<double> expected;
    /// Integral of the unnormalized target over the panel range.
    double raw_mass = 0.0;
    double max_abs_z = 0.0;
    double chi2 = 0.0;
    std::size_t dof = 0;
};

struct GoodnessOfFit {
    std::string law_name;
    std::size_t n = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<HistogramPanel> panels;
    /// Largest |observed - expected| / standard error over all panels.
    double max_abs_z = 0.0;
    double chi2 = 0.0;
    std::size_t dof = 0;
};

inline constexpr std::size_t kOracleBins = 40;

/// Histogram of sampled roots against the joint zero density (n = 1, 2) for
/// complex-gaussian-std, real-gaussian-std and exponential-unit.
GoodnessOfFit density_oracle_compare(const CoefficientLaw& law, std::size_t n, std::size_t samples,
                                     std::uint64_t seed, std::size_t bins = kOracleBins);

struct LdpRow {
    std::size_t degree = 0;
    std::size_t replica = 0;
    ReplicaStatus status = ReplicaStatus::ok;
    double ratio = 0.0;
    double relative_error = 0.0;
    std::size_t k = 0;
    std::string error;
};

struct LdpSummary {
    std::size_t degree = 0;
    double mean_abs_ratio = 0.0;
    double max_abs_ratio = 0.0;
    std::size_t succeeded = 0;
    std::size_t failed = 0;
};

struct LdpReport {
    nlohmann::json law;
    std::string law_name;
    Field reference = Field::complex;
    std::uint64_t seed = 0;
    std::size_t replicas = 0;
    std::vector<LdpSummary> summary;
    std::vector<LdpRow> rows;
    /// Smallest C with max|ratio| <= C log(n)/n at every degree.
    double fitted_c = 0.0;
    /// Same fit restricted to the two smallest degrees, and whether the
    /// remaining degrees stay under that envelope.
    double fitted_c_small = 0.0;
    bool envelope_holds = false;
    bool max_ratio_decreasing = false;
    double elapsed_seconds = 0.0;
};

/// (1/n^2) log of the law's zero density over the reference ensemble's, at
/// zero configurations sampled from the law.
LdpReport ldp_ratio_scan(const ExperimentSpec& spec, Field reference);

}  // namespace kaczeros
