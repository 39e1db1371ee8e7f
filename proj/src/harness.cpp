#include "kaczeros/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "kaczeros/errors.hpp"
#include "kaczeros/measure.hpp"
#include "kaczeros/quadrature.hpp"
#include "kaczeros/zero_density.hpp"

namespace kaczeros {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRealTol = 1e-12;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

unsigned resolve_threads(unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    return threads;
}

// Runs `body`, turning library failures into a status plus message.
template <class Row, class Body>
void guarded(Row& row, bool strict, Body&& body) {
    try {
        body();
    } catch (const ConvergenceFailure& e) {
        if (strict) throw;
        row.status = ReplicaStatus::convergence_failure;
        row.error = e.what();
    } catch (const NumericFailure& e) {
        if (strict) throw;
        row.status = ReplicaStatus::numeric_failure;
        row.error = e.what();
    }
}

std::string replica_label(std::size_t degree, std::size_t replica) {
    return "degree " + std::to_string(degree) + " replica " + std::to_string(replica) + ": ";
}

}  // namespace

void ExperimentSpec::validate() const {
    if (degrees.empty()) throw InvalidConfiguration("experiment needs at least one degree");
    if (degrees.front() < 1) throw InvalidConfiguration("degrees must be >= 1");
    for (std::size_t i = 1; i < degrees.size(); ++i)
        if (degrees[i] <= degrees[i - 1]) throw InvalidConfiguration("degrees must be strictly ascending");
    if (replicas < 1) throw InvalidConfiguration("replicas must be >= 1");
    if (!law.has_sampler()) throw InvalidConfiguration("law '" + law.name() + "' has no sampler");
}

PhiloxStream replica_stream(std::uint64_t seed, std::size_t degree, std::size_t replica) noexcept {
    return PhiloxStream(seed, stream_id(degree, replica));
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
    const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
    std::vector<std::exception_ptr> errors(count);
    auto run_block = [&](std::size_t w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        for (std::size_t i = begin; i < end; ++i) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        run_block(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run_block, w);
        run_block(0);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string_view to_string(ReplicaStatus status) noexcept {
    switch (status) {
        case ReplicaStatus::ok: return "ok";
        case ReplicaStatus::convergence_failure: return "convergence_failure";
        case ReplicaStatus::numeric_failure: return "numeric_failure";
    }
    return "ok";
}

ConvergenceRow convergence_replica(const ExperimentSpec& spec, std::size_t degree, std::size_t replica) {
    static const EmpiricalMeasure circle = unit_circle_measure();
    ConvergenceRow row;
    row.degree = degree;
    row.replica = replica;
    try {
        guarded(row, spec.strict, [&] {
            PhiloxStream rng = replica_stream(spec.seed, degree, replica);
            const CoefficientVector c = sample_coeffs(spec.law, degree, rng);
            const RootSet roots = find_roots(c, spec.root_options);
            const EmpiricalMeasure mu = measure_from_roots(roots);
            row.dbl = dbl_distance(mu, circle);
            row.real_fraction = real_fraction(mu, kRealTol);
            row.max_backward_error = roots.max_backward_error;
        });
    } catch (const ConvergenceFailure& e) {
        throw ConvergenceFailure(replica_label(degree, replica) + e.what(), e.best_iterate(), e.residuals());
    } catch (const NumericFailure& e) {
        throw NumericFailure(replica_label(degree, replica) + e.what(), e.diagnostics());
    }
    return row;
}

ConvergenceReport run_convergence_scan(const ExperimentSpec& spec) {
    spec.validate();
    const auto start = std::chrono::steady_clock::now();
    ConvergenceReport report;
    report.law = spec.law.to_json();
    report.law_name = spec.law.short_name();
    report.seed = spec.seed;
    report.replicas = spec.replicas;
    report.rows.resize(spec.degrees.size() * spec.replicas);
    parallel_for(report.rows.size(), spec.threads, [&](std::size_t i) {
        report.rows[i] = convergence_replica(spec, spec.degrees[i / spec.replicas], i % spec.replicas);
    });
    for (std::size_t d = 0; d < spec.degrees.size(); ++d) {
        ConvergenceSummary s;
        s.degree = spec.degrees[d];
        for (std::size_t r = 0; r < spec.replicas; ++r) {
            const ConvergenceRow& row = report.rows[d * spec.replicas + r];
            if (row.status != ReplicaStatus::ok) {
                ++s.failed;
                continue;
            }
            ++s.succeeded;
            s.mean_dbl += row.dbl;
            s.max_dbl = std::max(s.max_dbl, row.dbl);
            s.mean_real_fraction += row.real_fraction;
        }
        if (s.succeeded > 0) {
            s.mean_dbl /= static_cast<double>(s.succeeded);
            s.mean_real_fraction /= static_cast<double>(s.succeeded);
        } else {
            s.mean_dbl = s.max_dbl = s.mean_real_fraction = std::numeric_limits<double>::quiet_NaN();
        }
        report.summary.push_back(s);
    }
    report.elapsed_seconds = seconds_since(start);
    return report;
}

namespace {

struct Coordinate {
    std::string name;
    double lo, hi;
    std::function<double(double)> to_t;    // sample value -> histogram coordinate
    std::function<double(double)> from_t;  // histogram coordinate -> sample value
};

Coordinate radial_coordinate() {
    return {"r/(1+r)", 0.0, 1.0, [](double r) { return r / (1.0 + r); }, [](double t) { return t / (1.0 - t); }};
}

Coordinate atan_coordinate() {
    return {"atan(x)", -kPi / 2, kPi / 2, [](double x) { return std::atan(x); }, [](double t) {
                if (std::abs(t) >= kPi / 2) return std::copysign(std::numeric_limits<double>::infinity(), t);
                return std::tan(t);
            }};
}

Coordinate negative_coordinate() {
    return {"1/(1-x)", 0.0, 1.0, [](double x) { return 1.0 / (1.0 - x); }, [](double t) { return 1.0 - 1.0 / t; }};
}

// Fills a panel from values in sample space and a target density on sample space.
HistogramPanel make_panel(std::string name, const Coordinate& coord, const std::vector<double>& values,
                          const std::function<double(double)>& density, std::size_t bins) {
    HistogramPanel p;
    p.name = std::move(name);
    p.coordinate = coord.name;
    p.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        p.edges[b] = coord.lo + (coord.hi - coord.lo) * static_cast<double>(b) / static_cast<double>(bins);
    p.observed.assign(bins, 0);
    for (double v : values) {
        const double t = coord.to_t(v);
        auto b = static_cast<std::size_t>((t - coord.lo) / (coord.hi - coord.lo) * static_cast<double>(bins));
        p.observed[std::min(b, bins - 1)] += 1;
    }
    // Bin masses are integrated in sample space.
    std::vector<double> mass(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double x0 = coord.from_t(p.edges[b]);
        const double x1 = coord.from_t(p.edges[b + 1]);
        const double lo = std::min(x0, x1), hi = std::max(x0, x1);
        mass[b] = quad::integrate(density, std::isfinite(lo) ? lo : -std::numeric_limits<double>::infinity(),
                                  std::isfinite(hi) ? hi : std::numeric_limits<double>::infinity(), 1e-9)
                      .value;
    }
    p.raw_mass = 0.0;
    for (double m : mass) p.raw_mass += m;
    p.expected.resize(bins);
    const double total = static_cast<double>(values.size());
    for (std::size_t b = 0; b < bins; ++b) {
        const double q = mass[b] / p.raw_mass;
        p.expected[b] = q;
        const double e = total * q;
        const double se = std::sqrt(total * q * (1.0 - q));
        const double diff = static_cast<double>(p.observed[b]) - e;
        if (se > 0.0) p.max_abs_z = std::max(p.max_abs_z, std::abs(diff) / se);
        else if (diff != 0.0) p.max_abs_z = std::numeric_limits<double>::infinity();
        if (e > 0.0) p.chi2 += diff * diff / e;
    }
    p.dof = bins - 1;
    return p;
}

HistogramPanel count_panel(std::string name, const std::vector<std::size_t>& counts, const std::vector<double>& masses) {
    HistogramPanel p;
    p.name = std::move(name);
    p.coordinate = "k";
    double total_mass = 0.0, total = 0.0;
    for (double m : masses) total_mass += m;
    for (std::size_t c : counts) total += static_cast<double>(c);
    p.raw_mass = total_mass;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        p.edges.push_back(static_cast<double>(k));
        p.observed.push_back(counts[k]);
        const double q = masses[k] / total_mass;
        p.expected.push_back(q);
        const double diff = static_cast<double>(counts[k]) - total * q;
        p.max_abs_z = std::max(p.max_abs_z, std::abs(diff) / std::sqrt(total * q * (1.0 - q)));
        p.chi2 += diff * diff / (total * q);
    }
    p.edges.push_back(static_cast<double>(counts.size()));
    p.dof = counts.size() - 1;
    return p;
}

}  // namespace

GoodnessOfFit density_oracle_compare(const CoefficientLaw& law, std::size_t n, std::size_t samples,
                                     std::uint64_t seed, std::size_t bins) {
    const LawKind kind = law.kind();
    if (kind != LawKind::complex_gaussian && kind != LawKind::real_gaussian && kind != LawKind::exponential)
        throw InvalidArgument("density oracle supports complex-gaussian-std, real-gaussian-std and exponential-unit");
    if (n != 1 && n != 2) throw InvalidArgument("density oracle supports n = 1 and n = 2");
    if (samples < 2 || bins < 2) throw InvalidArgument("density oracle needs at least 2 samples and 2 bins");

    const Field field = law.field();
    PhiloxStream rng(seed, 0);
    std::vector<double> radii, angles, stratum;
    std::vector<std::size_t> pair_counts(n / 2 + 1, 0);
    for (std::size_t s = 0; s < samples; ++s) {
        const RootSet roots = find_roots(sample_coeffs(law, n, rng));
        const cplx z = roots.roots[n == 1 ? 0 : (rng.uniform() < 0.5 ? 0 : 1)];
        if (field == Field::complex) {
            radii.push_back(std::abs(z));
            angles.push_back(std::arg(z));
        } else {
            const std::size_t k = conjugate_pair_count(roots.roots);
            pair_counts[k] += 1;
            if (k == 0) stratum.push_back(z.real());
        }
    }

    GoodnessOfFit fit;
    fit.law_name = law.name();
    fit.n = n;
    fit.samples = samples;
    fit.seed = seed;

    auto single_root = [field](double x) {
        const cplx z[] = {cplx(x, 0.0)};
        return std::exp(log_joint_density(field, z).log_value);
    };
    if (field == Field::complex) {
        std::function<double(double)> radial;
        if (n == 1) {
            radial = [](double r) {
                const cplx z[] = {cplx(r, 0.0)};
                return 2.0 * kPi * r * std::exp(log_joint_density(Field::complex, z).log_value);
            };
        } else {
            radial = [](double r) { return small_n::complex_radial_marginal(r); };
        }
        fit.panels.push_back(make_panel("modulus", radial_coordinate(), radii, radial, bins));
        const Coordinate angle{"arg(z)", -kPi, kPi, [](double t) { return t; }, [](double t) { return t; }};
        fit.panels.push_back(make_panel("argument", angle, angles, [](double) { return 1.0; }, bins));
    } else {
        const Coordinate coord = field == Field::real ? atan_coordinate() : negative_coordinate();
        if (n == 1) {
            fit.panels.push_back(make_panel("root", coord, stratum, single_root, bins));
        } else {
            fit.panels.push_back(make_panel("real-stratum root", coord, stratum,
                                            [field](double x) { return small_n::real_stratum_marginal(field, x); }, bins));
            fit.panels.push_back(count_panel(
                "pair count", pair_counts, {small_n::mixture_mass(field, 2, 0), small_n::mixture_mass(field, 2, 1)}));
        }
    }
    for (const HistogramPanel& p : fit.panels) {
        fit.max_abs_z = std::max(fit.max_abs_z, p.max_abs_z);
        fit.chi2 += p.chi2;
        fit.dof += p.dof;
    }
    return fit;
}

LdpReport ldp_ratio_scan(const ExperimentSpec& spec, Field reference) {
    spec.validate();
    if (spec.law.kind() == LawKind::custom) throw InvalidArgument("ldp_ratio_scan supports built-in laws only");
    if (spec.law.field() != reference)
        throw InvalidArgument("law field " + std::string(to_string(spec.law.field())) + " differs from reference " +
                              std::string(to_string(reference)));
    const auto start = std::chrono::steady_clock::now();
    LdpReport report;
    report.law = spec.law.to_json();
    report.law_name = spec.law.short_name();
    report.reference = reference;
    report.seed = spec.seed;
    report.replicas = spec.replicas;
    report.rows.resize(spec.degrees.size() * spec.replicas);
    parallel_for(report.rows.size(), spec.threads, [&](std::size_t i) {
        LdpRow& row = report.rows[i];
        row.degree = spec.degrees[i / spec.replicas];
        row.replica = i % spec.replicas;
        guarded(row, spec.strict, [&] {
            PhiloxStream rng = replica_stream(spec.seed, row.degree, row.replica);
            const RootSet roots = find_roots(sample_coeffs(spec.law, row.degree, rng), spec.root_options);
            const SandwichReport s = sandwich_log_ratio(spec.law, roots, reference);
            row.ratio = s.ratio;
            row.relative_error = s.relative_error;
            row.k = s.k;
        });
    });

    for (std::size_t d = 0; d < spec.degrees.size(); ++d) {
        LdpSummary s;
        s.degree = spec.degrees[d];
        for (std::size_t r = 0; r < spec.replicas; ++r) {
            const LdpRow& row = report.rows[d * spec.replicas + r];
            if (row.status != ReplicaStatus::ok) {
                ++s.failed;
                continue;
            }
            ++s.succeeded;
            s.mean_abs_ratio += std::abs(row.ratio);
            s.max_abs_ratio = std::max(s.max_abs_ratio, std::abs(row.ratio));
        }
        if (s.succeeded > 0) s.mean_abs_ratio /= static_cast<double>(s.succeeded);
        report.summary.push_back(s);
    }

    auto envelope_c = [](const LdpSummary& s) {
        const double n = static_cast<double>(s.degree);
        return s.max_abs_ratio * n / std::log(n);
    };
    std::vector<const LdpSummary*> fit_rows;
    for (const LdpSummary& s : report.summary)
        if (s.degree >= 2 && s.succeeded > 0) fit_rows.push_back(&s);
    for (std::size_t i = 0; i < fit_rows.size(); ++i) {
        report.fitted_c = std::max(report.fitted_c, envelope_c(*fit_rows[i]));
        if (i < 2) report.fitted_c_small = std::max(report.fitted_c_small, envelope_c(*fit_rows[i]));
    }
    report.envelope_holds = fit_rows.size() >= 3;
    for (std::size_t i = 2; i < fit_rows.size(); ++i)
        if (envelope_c(*fit_rows[i]) > report.fitted_c_small) report.envelope_holds = false;
    report.max_ratio_decreasing = true;
    for (std::size_t d = 1; d < report.summary.size(); ++d)
        if (!(report.summary[d].max_abs_ratio < report.summary[d - 1].max_abs_ratio)) report.max_ratio_decreasing = false;
    report.elapsed_seconds = seconds_since(start);
    return report;
}

}  // namespace kaczeros
