#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kaczeros/coeff_laws.hpp"
#include "kaczeros/errors.hpp"
#include "kaczeros/harness.hpp"
#include "kaczeros/io.hpp"
#include "kaczeros/measure.hpp"
#include "kaczeros/polynomial.hpp"
#include "kaczeros/rate_function.hpp"
#include "kaczeros/zero_density.hpp"

using namespace kaczeros;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string format = "json";
    std::string out;

    std::uint64_t require_seed(const std::string& command) const {
        if (!seed) throw UsageError(command + " is stochastic and needs --seed");
        return *seed;
    }
};

// Flattens scalar members (nested objects with dotted keys) into one CSV row.
void flatten(const json& j, const std::string& prefix, std::vector<std::string>& keys, std::vector<std::string>& values) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            flatten(*it, key, keys, values);
        } else if (!it->is_array()) {
            keys.push_back(key);
            values.push_back(it->is_string() ? it->get<std::string>() : it->dump());
        }
    }
}

std::string json_row_csv(const json& j) {
    std::vector<std::string> keys, values;
    flatten(j, "", keys, values);
    std::ostringstream out;
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
    out << '\n';
    return out.str();
}

// Artifact to --out (summary on stdout) or to stdout (summary on stderr).
void emit(const Globals& g, const std::string& artifact, const std::string& summary) {
    if (!g.out.empty()) {
        io::write_text(g.out, artifact);
        std::cout << summary << '\n';
    } else {
        std::cout << artifact;
        std::cerr << summary << '\n';
    }
}

void emit_report(const Globals& g, const json& report, const std::string& summary) {
    emit(g, g.format == "csv" ? json_row_csv(report) : io::dump(report), summary);
}

void emit_complex(const Globals& g, std::span<const cplx> values, const std::string& summary) {
    emit(g, g.format == "csv" ? io::complex_csv(values) : io::dump(io::complex_array(values)), summary);
}

CoefficientLaw parse_law(const std::string& token, const std::string& json_text) {
    if (!json_text.empty()) return CoefficientLaw::from_json(json::parse(json_text));
    if (token.empty()) throw UsageError("a coefficient law is required (--law or --law-json)");
    return CoefficientLaw::from_token(token);
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(10);
    s << x;
    return s.str();
}

std::vector<cplx> roots_of(const std::string& roots_file, std::size_t unity) {
    if (!roots_file.empty() && unity > 0) throw UsageError("give either --roots-file or --unity");
    if (unity > 0) return roots_of_unity(unity);
    if (roots_file.empty()) throw UsageError("--roots-file (or --unity) is required");
    return io::read_complex_csv_file(roots_file);
}

Field parse_ensemble_field(const std::string& text) {
    try {
        return parse_field(text);
    } catch (const InvalidArgument&) {
        throw UsageError("unknown ensemble '" + text + "' (expected C, R or R+)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zeros of random Kac polynomials: sampling, roots, empirical measures, rate functionals, "
                 "zero densities and Monte Carlo scans.",
                 "kaczeros"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    Globals g;
    if (const char* env = std::getenv("KACZEROS_THREADS")) {
        try {
            g.threads = static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            std::cerr << "error: KACZEROS_THREADS must be a non-negative integer\n";
            return 2;
        }
    }
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Master seed (required by stochastic subcommands)");
    app.add_option("--threads", g.threads, "Worker threads for scans (0 = all cores; env KACZEROS_THREADS)");
    app.add_option("--format", g.format, "Artifact format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "Artifact path (directory for scan)");

    // sample
    auto* sample = app.add_subcommand("sample", "Draw n+1 i.i.d. coefficients a_0..a_n");
    std::string law_token, law_json;
    std::size_t degree = 0;
    sample->add_option("--law", law_token, "cgauss | rgauss | exp | udisk[:delta[:field]] | pdisk:alpha[:delta[:field]]");
    sample->add_option("--law-json", law_json, "Law as JSON {\"kind\": ..., \"params\": {...}}");
    sample->add_option("--n", degree, "Degree")->required()->check(CLI::PositiveNumber);

    // roots
    auto* roots_cmd = app.add_subcommand("roots", "Find roots of a polynomial, or expand roots into coefficients");
    std::string coeffs_file, roots_file, method = "aberth";
    double tol = 1e-12;
    bool expand = false, tilde = false;
    roots_cmd->add_option("--coeffs-file", coeffs_file, "Coefficients a_0..a_n as re,im CSV");
    roots_cmd->add_option("--law", law_token, "Sample the coefficients from this law");
    roots_cmd->add_option("--law-json", law_json, "Law as JSON");
    roots_cmd->add_option("--n", degree, "Degree when sampling");
    roots_cmd->add_option("--method", method, "Root finder")->check(CLI::IsMember({"aberth", "companion", "auto"}));
    roots_cmd->add_option("--tol", tol, "Backward-error certification threshold");
    roots_cmd->add_flag("--expand", expand, "Expand --roots-file into coefficients (Vieta)");
    roots_cmd->add_option("--roots-file", roots_file, "Roots as re,im CSV (with optional JSON sidecar)");
    roots_cmd->add_flag("--tilde", tilde, "With --expand: output a_k / a_n");

    // measure
    auto* measure_cmd = app.add_subcommand("measure", "Empirical zero measure: BL distance, real fraction, symmetry");
    std::string against = "circle", against_file;
    double real_tol = 1e-12;
    std::size_t angular_bins = 0;
    double rotate_angle = 0.0;
    measure_cmd->add_option("--roots-file", roots_file, "Atoms as re,im CSV")->required();
    measure_cmd->add_option("--against", against, "Comparison measure")
        ->check(CLI::IsMember({"circle", "conjugate", "file", "rotation"}));
    measure_cmd->add_option("--against-file", against_file, "Second measure for --against file");
    measure_cmd->add_option("--angle", rotate_angle, "Rotation angle for --against rotation");
    measure_cmd->add_option("--real-tol", real_tol, "Tolerance for real atoms: |Im z| <= tol (1 + |z|)");
    measure_cmd->add_option("--angular-hist", angular_bins, "Emit an angular histogram CSV with this many bins");

    // rate
    auto* rate_cmd = app.add_subcommand("rate", "Rate functionals I_C, I_R, I_R+ and I_alpha");
    std::string ensemble = "C";
    double alpha = 0.0, sym_tol = 1e-10;
    std::size_t unity = 0;
    bool compactified = false, energy_only = false, sup_only = false;
    int grid = 4096;
    rate_cmd->add_option("--ensemble", ensemble, "C | R | R+ | alpha");
    rate_cmd->add_option("--alpha", alpha, "Exponent for --ensemble alpha");
    rate_cmd->add_option("--roots-file", roots_file, "Atoms as re,im CSV");
    rate_cmd->add_option("--unity", unity, "Use the N-th roots of unity as atoms");
    rate_cmd->add_flag("--compactified", compactified, "Evaluate I_C through the compactified kernel");
    rate_cmd->add_option("--symmetry-tol", sym_tol, "Conjugation-symmetry tolerance for I_R");
    rate_cmd->add_option("--grid", grid, "Circle grid size for the supremum")->check(CLI::PositiveNumber);
    rate_cmd->add_flag("--energy", energy_only, "Only the logarithmic energy");
    rate_cmd->add_flag("--circle-sup", sup_only, "Only sup over |z|=1 of the log potential");

    // density
    auto* density_cmd = app.add_subcommand("density", "Joint zero densities, norms, sandwich ratios");
    double rho = 2.0;
    bool norms = false, gamma = false, theta = false;
    int mixture_k = -1;
    density_cmd->add_option("--ensemble", ensemble, "C | R | R+");
    density_cmd->add_option("--roots-file", roots_file, "Roots as re,im CSV");
    density_cmd->add_option("--law", law_token, "Sandwich ratio of this law against --ensemble");
    density_cmd->add_option("--law-json", law_json, "Law as JSON");
    density_cmd->add_flag("--norms", norms, "Norms of --coeffs-file: 1, 2, inf and --rho");
    density_cmd->add_option("--coeffs-file", coeffs_file, "Vector as re,im CSV");
    density_cmd->add_flag("--gamma", gamma, "gamma_n(rho, n)");
    density_cmd->add_flag("--theta", theta, "log theta_n for --ensemble");
    density_cmd->add_option("--mixture-mass", mixture_k, "Mass of the k-th mixture term (n = 1, 2)");
    density_cmd->add_option("--rho", rho, "Exponent rho");
    density_cmd->add_option("--n", degree, "Degree");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Check a law against the growth hypotheses, or run a density oracle");
    std::vector<double> lambdas;
    double delta = 1.0;
    bool envelope = false, normalization = false, oracle = false;
    std::optional<double> env_rho, env_r, env_R;
    std::size_t samples = 100000, bins = kOracleBins;
    verify_cmd->add_option("--law", law_token, "Law token");
    verify_cmd->add_option("--law-json", law_json, "Law as JSON");
    verify_cmd->add_flag("--envelope", envelope, "Probe g(x) <= exp(-r|x|^rho + R)");
    verify_cmd->add_option("--rho", env_rho, "Envelope rho (default: stored)");
    verify_cmd->add_option("--r", env_r, "Envelope r (default: stored)");
    verify_cmd->add_option("--R", env_R, "Envelope R (default: stored)");
    verify_cmd->add_option("--lambda", lambdas, "c(lambda) for these lambda");
    verify_cmd->add_option("--delta", delta, "Small-ball radius for c(lambda)");
    verify_cmd->add_flag("--normalization", normalization, "Integral of g");
    verify_cmd->add_flag("--oracle", oracle, "Histogram of sampled roots vs the joint density");
    verify_cmd->add_option("--n", degree, "Degree for --oracle (1 or 2)");
    verify_cmd->add_option("--samples", samples, "Samples for --oracle");
    verify_cmd->add_option("--bins", bins, "Histogram bins for --oracle");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "Monte Carlo scans: weak convergence or density ratios");
    std::string kind = "convergence", reference;
    std::vector<std::size_t> degrees;
    std::size_t replicas = 20;
    bool strict = false;
    scan_cmd->add_option("--kind", kind, "Experiment")->check(CLI::IsMember({"convergence", "ldp"}));
    scan_cmd->add_option("--law", law_token, "Law token");
    scan_cmd->add_option("--law-json", law_json, "Law as JSON");
    scan_cmd->add_option("--degrees", degrees, "Degrees, ascending")->required()->delimiter(',');
    scan_cmd->add_option("--replicas", replicas, "Replicas per degree")->check(CLI::PositiveNumber);
    scan_cmd->add_option("--reference", reference, "Reference ensemble for --kind ldp (default: the law's field)");
    scan_cmd->add_flag("--strict", strict, "Abort on the first failing replica");
    scan_cmd->add_option("--method", method, "Root finder")->check(CLI::IsMember({"aberth", "companion", "auto"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (seed_opt->count() > 0) g.seed = seed_value;

    try {
        if (sample->parsed()) {
            const CoefficientLaw law = parse_law(law_token, law_json);
            const CoefficientVector c = sample_coeffs(law, degree, g.require_seed("sample"));
            emit_complex(g, c.coeffs,
                         "sample: " + std::to_string(c.coeffs.size()) + " coefficients from " + law.name() + " (n=" +
                             std::to_string(degree) + ", seed=" + std::to_string(*g.seed) + ")");
        } else if (roots_cmd->parsed()) {
            if (expand) {
                if (roots_file.empty()) throw UsageError("--expand needs --roots-file");
                const RootSet roots = io::read_roots(roots_file);
                CoefficientVector c = expand_from_roots(roots.roots, roots.leading);
                const std::vector<cplx> values = tilde ? tilde_a(c).entries : c.coeffs;
                emit_complex(g, values, "roots --expand: " + std::to_string(values.size()) + " coefficients");
            } else {
                CoefficientVector c;
                if (!coeffs_file.empty()) {
                    if (!law_token.empty() || !law_json.empty()) throw UsageError("give either --coeffs-file or --law");
                    c.coeffs = io::read_complex_csv_file(coeffs_file);
                    bool real = true;
                    for (const cplx& a : c.coeffs) real = real && a.imag() == 0.0;
                    c.field = real ? Field::real : Field::complex;
                } else {
                    if (degree == 0) throw UsageError("--law needs --n");
                    c = sample_coeffs(parse_law(law_token, law_json), degree, g.require_seed("roots --law"));
                }
                RootOptions opts;
                opts.method = parse_root_method(method);
                opts.tol = tol;
                const RootSet roots = find_roots(c, opts);
                const ResidualReport residual = residual_report(c, roots);
                const std::string summary = "roots: degree " + std::to_string(roots.degree()) +
                                            ", max backward error " + fmt(residual.max_backward_error) +
                                            (roots.residual_certified ? " (certified)" : " (not certified)");
                if (g.format == "csv") {
                    emit(g, io::complex_csv(roots.roots), summary);
                    if (!g.out.empty()) {
                        std::filesystem::path sidecar(g.out);
                        sidecar.replace_extension(".json");
                        io::write_text(sidecar, io::dump(io::roots_sidecar(roots)));
                    }
                } else {
                    json j = io::roots_sidecar(roots);
                    j["roots"] = io::complex_array(roots.roots);
                    j["certified"] = roots.residual_certified;
                    j["method"] = method;
                    j["residual"] = io::to_json(residual);
                    emit(g, io::dump(j), summary);
                }
            }
        } else if (measure_cmd->parsed()) {
            const EmpiricalMeasure mu = measure_from_atoms(io::read_complex_csv_file(roots_file));
            if (angular_bins > 0) {
                std::vector<std::size_t> counts(angular_bins, 0);
                const double pi = std::numbers::pi;
                for (const cplx& z : mu.atoms) {
                    auto b = static_cast<std::size_t>((std::arg(z) + pi) / (2 * pi) * static_cast<double>(angular_bins));
                    counts[std::min(b, angular_bins - 1)] += 1;
                }
                std::ostringstream csv;
                csv << "lower,upper,count,density\n";
                for (std::size_t b = 0; b < angular_bins; ++b) {
                    const double lo = -pi + 2 * pi * static_cast<double>(b) / static_cast<double>(angular_bins);
                    const double hi = -pi + 2 * pi * static_cast<double>(b + 1) / static_cast<double>(angular_bins);
                    csv.precision(17);
                    csv << lo << ',' << hi << ',' << counts[b] << ','
                        << static_cast<double>(counts[b]) / (static_cast<double>(mu.size()) * (hi - lo)) << '\n';
                }
                emit(g, csv.str(), "measure: angular histogram, " + std::to_string(angular_bins) + " bins");
            } else {
                EmpiricalMeasure nu;
                if (against == "circle") nu = unit_circle_measure();
                else if (against == "conjugate") nu = conjugate(mu);
                else if (against == "rotation") nu = rotate(mu, rotate_angle);
                else {
                    if (against_file.empty()) throw UsageError("--against file needs --against-file");
                    nu = measure_from_atoms(io::read_complex_csv_file(against_file));
                }
                const BLDistance d = dbl_distance_report(mu, nu);
                json j = {{"atoms", mu.size()},
                          {"against", against},
                          {"dbl", io::to_json(d)},
                          {"real_fraction", io::number(real_fraction(mu, real_tol))},
                          {"conj_symmetry_defect", io::number(conj_symmetry_defect(mu))}};
                emit_report(g, j, "measure: dbl to " + against + " = " + fmt(d.value));
            }
        } else if (rate_cmd->parsed()) {
            const EmpiricalMeasure mu = measure_from_atoms(roots_of(roots_file, unity));
            CircleSupOptions opts;
            opts.grid = grid;
            if (energy_only) {
                const EnergyResult e = log_energy_report(mu);
                emit_report(g, {{"energy", io::number(e.value)}, {"coincident", e.coincident}},
                            "rate --energy: " + fmt(e.value));
            } else if (sup_only) {
                const CircleSup s = circle_sup(mu, false, opts);
                emit_report(g,
                            {{"circle_sup", io::number(s.value)},
                             {"argmax_angle", io::number(s.argmax_angle)},
                             {"regularized", s.regularized}},
                            "rate --circle-sup: " + fmt(s.value));
            } else {
                RateReport r;
                if (ensemble == "alpha") {
                    r = rate_I_alpha(alpha, mu, opts);
                } else {
                    const Field field = parse_ensemble_field(ensemble);
                    if (compactified) {
                        if (field != Field::complex) throw UsageError("--compactified applies to --ensemble C");
                        r = rate_I_compactified(mu, opts);
                    } else {
                        r = rate_I(field, mu, sym_tol, opts);
                    }
                }
                emit_report(g, io::to_json(r), "rate: I_" + std::string(to_string(r.ensemble)) + " = " + fmt(r.value));
            }
        } else if (density_cmd->parsed()) {
            if (norms) {
                if (coeffs_file.empty()) throw UsageError("--norms needs --coeffs-file");
                const std::vector<cplx> v = io::read_complex_csv_file(coeffs_file);
                const double inf = std::numeric_limits<double>::infinity();
                json j = {{"norm_1", io::number(vector_norm(v, 1.0))},
                          {"norm_2", io::number(vector_norm(v, 2.0))},
                          {"norm_inf", io::number(vector_norm(v, inf))},
                          {"rho", rho},
                          {"norm_rho", io::number(vector_norm(v, rho))}};
                emit_report(g, j, "density --norms: ||v||_2 = " + fmt(vector_norm(v, 2.0)));
            } else if (gamma) {
                if (degree == 0) throw UsageError("--gamma needs --n");
                const double value = gamma_n(rho, degree);
                emit_report(g, {{"rho", rho}, {"n", degree}, {"gamma", value}}, "density --gamma: " + fmt(value));
            } else if (theta) {
                if (degree == 0) throw UsageError("--theta needs --n");
                const double value = log_theta(parse_ensemble_field(ensemble), degree);
                emit_report(g, {{"ensemble", ensemble}, {"n", degree}, {"log_theta", value}},
                            "density --theta: " + fmt(value));
            } else if (mixture_k >= 0) {
                const double mass =
                    small_n::mixture_mass(parse_ensemble_field(ensemble), degree, static_cast<std::size_t>(mixture_k));
                emit_report(g, {{"ensemble", ensemble}, {"n", degree}, {"k", mixture_k}, {"mass", mass}},
                            "density --mixture-mass: " + fmt(mass));
            } else {
                if (roots_file.empty()) throw UsageError("density needs --roots-file");
                const std::vector<cplx> roots = io::read_complex_csv_file(roots_file);
                const Field field = parse_ensemble_field(ensemble);
                if (!law_token.empty() || !law_json.empty()) {
                    const CoefficientLaw law = parse_law(law_token, law_json);
                    const SandwichReport s = sandwich_log_ratio(law, roots, field);
                    emit_report(g, io::to_json(s), "density --law: ratio = " + fmt(s.ratio));
                } else {
                    const DensityReport d = log_joint_density(field, roots);
                    emit_report(g, io::to_json(d), "density: log p = " + fmt(d.log_value));
                }
            }
        } else if (verify_cmd->parsed()) {
            const CoefficientLaw law = parse_law(law_token, law_json);
            if (oracle) {
                const GoodnessOfFit fit = density_oracle_compare(law, degree, samples, g.require_seed("verify --oracle"), bins);
                const std::string summary = "verify --oracle: max |z| = " + fmt(fit.max_abs_z) + ", chi2 = " +
                                            fmt(fit.chi2) + " on " + std::to_string(fit.dof) + " dof";
                emit(g, g.format == "csv" ? io::to_csv(fit) : io::dump(io::to_json(fit)), summary);
            } else {
                json j = {{"law", law.to_json()}, {"satisfies_hypotheses", law.satisfies_hypotheses()}};
                std::string summary = "verify: " + law.name();
                if (envelope || (!normalization && lambdas.empty())) {
                    std::optional<EnvelopeParams> p = law.envelope();
                    if (!p && !(env_rho && env_r && env_R))
                        throw UsageError("law has no stored envelope; give --rho, --r and --R");
                    EnvelopeParams params(env_rho.value_or(p ? p->rho : 0.0), env_r.value_or(p ? p->r : 0.0),
                                          env_R.value_or(p ? p->R : 0.0));
                    const EnvelopeReport e = check_envelope(law, params);
                    j["envelope"] = io::to_json(e);
                    j["envelope"]["params"] = {{"rho", params.rho}, {"r", params.r}, {"R", params.R}};
                    summary += e.holds ? ", envelope holds" : ", envelope violated";
                }
                if (!lambdas.empty()) {
                    json arr = json::array();
                    for (double lambda : lambdas) {
                        json entry = io::to_json(c_lambda(law, delta, lambda));
                        entry["lambda"] = lambda;
                        entry["delta"] = delta;
                        arr.push_back(entry);
                    }
                    j["c_lambda"] = arr;
                    summary += ", c(lambda) for " + std::to_string(lambdas.size()) + " values";
                }
                if (normalization) {
                    const double z = normalization_integral(law);
                    j["normalization"] = io::number(z);
                    summary += ", integral of g = " + fmt(z);
                }
                emit(g, io::dump(j), summary);
            }
        } else if (scan_cmd->parsed()) {
            ExperimentSpec spec;
            spec.law = parse_law(law_token, law_json);
            spec.degrees = degrees;
            spec.replicas = replicas;
            spec.seed = g.require_seed("scan");
            spec.threads = g.threads;
            spec.strict = strict;
            spec.root_options.method = parse_root_method(method);
            json report;
            std::string csv, summary;
            double elapsed = 0.0;
            if (kind == "convergence") {
                const ConvergenceReport r = run_convergence_scan(spec);
                report = io::to_json(r);
                csv = io::to_csv(r);
                elapsed = r.elapsed_seconds;
                summary = "scan convergence: mean dbl at n=" + std::to_string(r.summary.back().degree) + " = " +
                          fmt(r.summary.back().mean_dbl);
            } else {
                const Field ref = reference.empty() ? spec.law.field() : parse_ensemble_field(reference);
                const LdpReport r = ldp_ratio_scan(spec, ref);
                report = io::to_json(r);
                csv = io::to_csv(r);
                elapsed = r.elapsed_seconds;
                summary = "scan ldp: max |ratio| at n=" + std::to_string(r.summary.back().degree) + " = " +
                          fmt(r.summary.back().max_abs_ratio) + ", fitted C = " + fmt(r.fitted_c);
            }
            if (g.out.empty()) {
                std::cout << (g.format == "csv" ? csv : io::dump(report));
                std::cerr << summary << '\n';
            } else {
                const std::filesystem::path dir(g.out);
                const std::string stem = kind + "-" + spec.law.short_name() + "-" + std::to_string(spec.seed);
                io::write_text(dir / (stem + ".json"), io::dump(report));
                io::write_text(dir / (stem + ".csv"), csv);
                io::write_text(dir / (stem + ".timing.json"),
                               io::dump({{"elapsed_seconds", elapsed}, {"threads", spec.threads}}));
                std::cout << summary << " -> " << (dir / stem).string() << ".{json,csv}\n";
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const InvalidConfiguration& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "invalid JSON: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return 1;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << " [" << e.diagnostics() << "]\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
