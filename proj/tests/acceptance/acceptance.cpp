// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kaczeros/coeff_laws.hpp"
#include "kaczeros/harness.hpp"
#include "kaczeros/io.hpp"
#include "kaczeros/matching.hpp"
#include "kaczeros/measure.hpp"
#include "kaczeros/polynomial.hpp"
#include "kaczeros/rate_function.hpp"
#include "kaczeros/zero_density.hpp"

#ifndef KACZEROS_SOURCE_DIR
#define KACZEROS_SOURCE_DIR "."
#endif

using namespace kaczeros;
using std::numbers::pi;

namespace {

// Tolerances and budgets.
constexpr double kOracleMaxZ = 5.0;
constexpr std::size_t kOracleSamples = 100000;
constexpr double kOracleSeconds = 30.0;
constexpr double kBackwardError = 1e-10;
constexpr double kRootMatch = 1e-6;
constexpr double kRateTol = 1e-12;
constexpr double kRateZeroTol = 1e-15;
constexpr double kSupTol = 1e-9;
constexpr double kStructureTol = 1e-12;
constexpr double kCompactifiedTol = 1e-9;
constexpr double kCLambdaTol = 1e-8;
constexpr double kLdpSeconds = 600.0;
constexpr double kConvergenceSeconds = 300.0;
constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

void append(Outcome& o, const std::string& s) { o.detail += (o.detail.empty() ? "" : "; ") + s; }

Outcome density_oracles() {
    Outcome o;
    for (const auto& law : {CoefficientLaw::complex_gaussian(), CoefficientLaw::real_gaussian(), CoefficientLaw::exponential()}) {
        const auto start = std::chrono::steady_clock::now();
        const GoodnessOfFit fit = density_oracle_compare(law, 1, kOracleSamples, kSeed);
        const double t = seconds(start);
        const bool ok = fit.max_abs_z <= kOracleMaxZ && t < kOracleSeconds;
        o.pass = o.pass && ok;
        append(o, law.short_name() + fmt(" max|z|=%.2f", fit.max_abs_z) + fmt(" (%.1fs)", t));
    }
    return o;
}

Outcome root_certification() {
    Outcome o;
    double worst_error = 0.0, worst_match = 0.0;
    const std::size_t degrees[] = {16, 32, 64, 128, 256};
    for (std::size_t i = 0; i < 100; ++i) {
        const std::size_t n = degrees[i % 5];
        PhiloxStream rng(kSeed, stream_id(n, i));
        const CoefficientVector c = sample_coeffs(CoefficientLaw::complex_gaussian(), n, rng);
        const RootSet a = find_roots(c, RootMethod::aberth);
        const RootSet b = find_roots(c, RootMethod::companion);
        worst_error = std::max({worst_error, residual_report(c, a).max_backward_error});
        worst_match = std::max(worst_match, matched_max_distance(a.roots, b.roots));
    }
    o.pass = worst_error < kBackwardError && worst_match < kRootMatch;
    append(o, fmt("max backward error %.2e", worst_error));
    append(o, fmt("max aberth/companion distance %.2e", worst_match));
    return o;
}

Outcome rate_closed_forms() {
    Outcome o;
    for (std::size_t n : {4, 64, 1024}) {
        const EmpiricalMeasure mu = measure_from_atoms(roots_of_unity(n));
        const double nd = static_cast<double>(n);
        const double value = rate_I(Field::complex, mu).value;
        const double expected = (2 * std::log(2.0) - std::log(nd)) / nd;
        const double sup = circle_sup(mu, true).value;
        bool ok = std::abs(value - expected) <= kRateTol && std::abs(sup - 2 * std::log(2.0) / nd) <= kSupTol;
        if (n == 4) ok = ok && std::abs(value) <= kRateZeroTol;
        o.pass = o.pass && ok;
        append(o, "N=" + std::to_string(n) + fmt(" I_C err %.1e", std::abs(value - expected)) +
                      fmt(" sup err %.1e", std::abs(sup - 2 * std::log(2.0) / nd)));
    }
    return o;
}

Outcome rate_structure() {
    Outcome o;
    PhiloxStream rng(kSeed, 4);
    double worst_half = 0.0, worst_alpha = 0.0, worst_compact = 0.0;
    bool flagged = true;
    for (int t = 0; t < 100; ++t) {
        std::vector<cplx> sym;
        for (int i = 0; i < 6; ++i) {
            const cplx w = 1.5 * rng.complex_normal();
            sym.push_back(w);
            sym.push_back(std::conj(w));
        }
        sym.push_back(rng.normal());
        const EmpiricalMeasure s = measure_from_atoms(sym);
        const double ic = rate_I(Field::complex, s).value;
        worst_half = std::max(worst_half, std::abs(rate_I(Field::real, s).value - 0.5 * ic));

        std::vector<cplx> z;
        for (int i = 0; i < 15; ++i) z.push_back(rng.complex_normal());
        const EmpiricalMeasure mu = measure_from_atoms(z);
        const RateReport asym = rate_I(Field::real, mu);
        flagged = flagged && asym.value == INFINITY && asym.flags.symmetry_violation;
        const double c = rate_I(Field::complex, mu).value;
        worst_alpha = std::max(worst_alpha, std::abs(rate_I_alpha(0.0, mu).value - c));
        worst_compact = std::max(worst_compact, std::abs(rate_I_compactified(mu).value - c));
    }
    o.pass = worst_half <= kStructureTol && flagged && worst_alpha <= kStructureTol && worst_compact <= kCompactifiedTol;
    append(o, fmt("|I_R - I_C/2| %.1e", worst_half));
    append(o, std::string("asymmetric -> inf+flag ") + (flagged ? "yes" : "no"));
    append(o, fmt("|I_0 - I_C| %.1e", worst_alpha));
    append(o, fmt("|compactified - simplified| %.1e", worst_compact));
    return o;
}

Outcome norms() {
    Outcome o;
    PhiloxStream rng(kSeed, 5);
    std::size_t violations = 0, ordering = 0, checked = 0;
    std::map<std::size_t, std::size_t> by_degree;
    for (double rho : {0.5, 1.0, 2.0, 3.0, 4.0})
        for (std::size_t n : {4, 16, 64})
            for (int t = 0; t < 1000; ++t) {
                std::vector<cplx> v(n + 1);
                for (cplx& x : v) x = rng.complex_normal();
                ++checked;
                if (vector_norm(v, rho) < gamma_n(rho, n) * vector_norm(v, 2.0)) {
                    ++violations;
                    ++by_degree[n];
                }
                const double ninf = vector_norm(v, INFINITY), n2 = vector_norm(v, 2.0), n1 = vector_norm(v, 1.0);
                if (!(ninf <= n2 && n2 <= n1)) ++ordering;
            }
    o.pass = violations == 0 && ordering == 0;
    append(o, std::to_string(checked) + " vectors, " + std::to_string(violations) + " gamma_n violations, " +
                  std::to_string(ordering) + " ordering violations");
    for (const auto& [n, count] : by_degree) append(o, "n=" + std::to_string(n) + ": " + std::to_string(count));
    return o;
}

Outcome lemma_ingredients() {
    Outcome o;
    double worst = 0.0;
    for (double lambda : {1.0, 2.0, 5.0}) {
        const double disk = c_lambda(CoefficientLaw::uniform_disk(1.0), 1.0, lambda).value;
        const double e = c_lambda(CoefficientLaw::exponential(), 1.0, lambda).value;
        worst = std::max({worst, std::abs(disk / std::pow(pi, lambda + 1) - 1), std::abs(e / (std::expm1(lambda) / lambda) - 1)});
    }
    bool flags = true;
    const std::pair<double, double> divergent[] = {{0.5, 2.0}, {0.5, 4.0}, {1.0, 1.0}, {2.0, 3.0}};
    for (auto [alpha, lambda] : divergent)
        for (Field f : {Field::real, Field::positive}) flags = flags && c_lambda(CoefficientLaw::power_disk(alpha, 1.0, f), 1.0, lambda).divergent;
    o.pass = worst <= kCLambdaTol && flags;
    append(o, fmt("max relative error %.1e", worst));
    append(o, std::string("divergence flagged for lambda*alpha >= 1: ") + (flags ? "yes" : "no"));
    return o;
}

Outcome universality() {
    Outcome o;
    ExperimentSpec spec;
    spec.law = CoefficientLaw::uniform_disk(1.0);
    spec.degrees = {8, 16, 32, 64};
    spec.replicas = 20;
    spec.seed = kSeed;
    const auto start = std::chrono::steady_clock::now();
    const LdpReport r = ldp_ratio_scan(spec, Field::complex);
    const double t = seconds(start);
    std::size_t failed = 0;
    for (const auto& s : r.summary) failed += s.failed;
    o.pass = r.max_ratio_decreasing && r.envelope_holds && failed == 0 && t < kLdpSeconds;
    std::string maxes = "max|ratio|";
    for (const auto& s : r.summary) maxes += " " + std::to_string(s.degree) + ":" + fmt("%.4f", s.max_abs_ratio);
    append(o, maxes);
    append(o, fmt("C fitted on n=8,16: %.3f", r.fitted_c_small));
    append(o, fmt("(%.1fs)", t));
    return o;
}

Outcome weak_convergence() {
    Outcome o;
    std::ifstream in(std::string(KACZEROS_SOURCE_DIR) + "/config/pilot_thresholds.json");
    if (!in) return {false, "config/pilot_thresholds.json not found"};
    const double threshold = nlohmann::json::parse(in).at("convergence").at("max_mean_dbl").get<double>();
    const auto start = std::chrono::steady_clock::now();
    for (const auto& law : {CoefficientLaw::complex_gaussian(), CoefficientLaw::real_gaussian(), CoefficientLaw::exponential(),
                            CoefficientLaw::uniform_disk(1.0)}) {
        ExperimentSpec spec;
        spec.law = law;
        spec.degrees = {32, 128, 512};
        spec.replicas = 20;
        spec.seed = kSeed;
        const ConvergenceReport r = run_convergence_scan(spec);
        bool ok = r.summary.back().mean_dbl < threshold;
        for (std::size_t d = 1; d < r.summary.size(); ++d) ok = ok && r.summary[d].mean_dbl < r.summary[d - 1].mean_dbl;
        for (const auto& s : r.summary) ok = ok && s.failed == 0;
        o.pass = o.pass && ok;
        append(o, law.short_name() + fmt(" %.4f", r.summary[0].mean_dbl) + fmt(" > %.4f", r.summary[1].mean_dbl) +
                      fmt(" > %.4f", r.summary[2].mean_dbl));
    }
    const double t = seconds(start);
    o.pass = o.pass && t < kConvergenceSeconds;
    append(o, fmt("threshold %.3f", threshold) + fmt(" (%.1fs)", t));
    return o;
}

Outcome determinism() {
    Outcome o;
    ExperimentSpec spec;
    spec.law = CoefficientLaw::real_gaussian();
    spec.degrees = {16, 64};
    spec.replicas = 7;
    spec.seed = kSeed;
    std::vector<std::string> conv, ldp;
    for (unsigned threads : {1u, 2u, 3u, 8u}) {
        spec.threads = threads;
        conv.push_back(io::dump(io::to_json(run_convergence_scan(spec))) + io::to_csv(run_convergence_scan(spec)));
        ldp.push_back(io::dump(io::to_json(ldp_ratio_scan(spec, Field::real))));
    }
    for (std::size_t i = 1; i < conv.size(); ++i) o.pass = o.pass && conv[i] == conv[0] && ldp[i] == ldp[0];
    append(o, "convergence and ratio scans at 1, 2, 3, 8 threads");
    append(o, o.pass ? "byte-identical" : "reports differ");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"n=1 density oracles", density_oracles},
        {"root-finder certification", root_certification},
        {"rate functional closed forms", rate_closed_forms},
        {"rate functional structure", rate_structure},
        {"norm inequalities", norms},
        {"c(lambda) and divergence", lemma_ingredients},
        {"density ratio decay", universality},
        {"weak convergence", weak_convergence},
        {"determinism across threads", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
