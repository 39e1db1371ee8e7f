#include "kaczeros/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kaczeros/errors.hpp"

namespace kaczeros::io {
namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

double parse_double(const std::string& text, std::size_t line) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end)
        throw InvalidArgument("line " + std::to_string(line) + ": not a number: '" + text + "'");
    return v;
}

}  // namespace

nlohmann::json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double parse_number(const nlohmann::json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw InvalidArgument("expected a number, got " + j.dump());
}

void write_complex_csv(std::ostream& out, std::span<const cplx> values) {
    out << "re,im\n";
    for (const cplx& z : values) out << fmt(z.real()) << ',' << fmt(z.imag()) << '\n';
}

std::string complex_csv(std::span<const cplx> values) {
    std::ostringstream out;
    write_complex_csv(out, values);
    return out.str();
}

std::vector<cplx> read_complex_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "re,im") throw InvalidArgument("CSV must start with the header 're,im'");
    std::vector<cplx> values;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw InvalidArgument("line " + std::to_string(lineno) + ": expected two columns");
        values.emplace_back(parse_double(trim(line.substr(0, comma)), lineno),
                            parse_double(trim(line.substr(comma + 1)), lineno));
    }
    return values;
}

std::vector<cplx> read_complex_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    return read_complex_csv(in);
}

nlohmann::json complex_array(std::span<const cplx> values) {
    nlohmann::json arr = nlohmann::json::array();
    for (const cplx& z : values) arr.push_back({number(z.real()), number(z.imag())});
    return arr;
}

nlohmann::json roots_sidecar(const RootSet& roots) {
    return {{"leading_re", number(roots.leading.real())},
            {"leading_im", number(roots.leading.imag())},
            {"degree", roots.degree()},
            {"max_backward_error", number(roots.max_backward_error)}};
}

RootSet read_roots(const std::filesystem::path& csv_path) {
    RootSet roots;
    roots.roots = read_complex_csv_file(csv_path);
    std::filesystem::path sidecar = csv_path;
    sidecar.replace_extension(".json");
    if (std::filesystem::exists(sidecar)) {
        std::ifstream in(sidecar);
        const nlohmann::json j = nlohmann::json::parse(in);
        roots.leading = {parse_number(j.at("leading_re")), parse_number(j.at("leading_im"))};
        if (j.contains("max_backward_error")) roots.max_backward_error = parse_number(j.at("max_backward_error"));
        if (j.contains("degree") && j.at("degree").get<std::size_t>() != roots.degree())
            throw InvalidArgument("sidecar degree does not match " + csv_path.string());
    }
    return roots;
}

nlohmann::json to_json(const ResidualReport& r) {
    nlohmann::json per = nlohmann::json::array();
    for (double e : r.per_root) per.push_back(number(e));
    return {{"max_backward_error", number(r.max_backward_error)},
            {"coefficient_error", number(r.coefficient_error)},
            {"per_root", per}};
}

nlohmann::json to_json(const BLDistance& d) {
    const DictionaryFunction& f = bl_dictionary().at(d.argmax);
    return {{"value", number(d.value)},
            {"dictionary", std::string(d.dictionary)},
            {"argmax", {{"index", d.argmax}, {"center", f.center}, {"half_width", f.half_width}, {"mode", f.mode}}}};
}

nlohmann::json to_json(const RateReport& r) {
    return {{"ensemble", std::string(to_string(r.ensemble))},
            {"alpha", number(r.alpha)},
            {"value", number(r.value)},
            {"energy_term", number(r.energy_term)},
            {"sup_term", number(r.sup_term)},
            {"sup_argmax_angle", number(r.sup_argmax_angle)},
            {"flags",
             {{"symmetry_violation", r.flags.symmetry_violation},
              {"membership_unchecked", r.flags.membership_unchecked},
              {"atom_on_circle_regularized", r.flags.atom_on_circle_regularized},
              {"coincident_atoms", r.flags.coincident_atoms}}}};
}

nlohmann::json to_json(const DensityReport& r) {
    nlohmann::json j = {{"ensemble", std::string(to_string(r.ensemble))},
                        {"log_value", number(r.log_value)},
                        {"log_value_fiber", number(r.log_value_fiber)},
                        {"components",
                         {{"log_constant", number(r.components.log_constant)},
                          {"log_vandermonde", number(r.components.log_vandermonde)},
                          {"log_norm_term", number(r.components.log_norm_term)},
                          {"support", number(r.components.support)}}},
                        {"coincident_roots", r.coincident_roots},
                        {"outside_positive_cone", r.outside_positive_cone}};
    j["k"] = r.k ? nlohmann::json(*r.k) : nlohmann::json(nullptr);
    j["log_value_normalized"] = r.log_value_normalized ? number(*r.log_value_normalized) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const SandwichReport& r) {
    return {{"ratio", number(r.ratio)},
            {"log_p_law", number(r.log_p_law)},
            {"log_p_reference", number(r.log_p_reference)},
            {"log_fiber_integral", number(r.log_fiber_integral)},
            {"relative_error", number(r.relative_error)},
            {"k", r.k}};
}

nlohmann::json to_json(const EnvelopeReport& r) {
    nlohmann::json j = {{"holds", r.holds},
                        {"worst_excess", number(r.worst_excess)},
                        {"worst_point", {number(r.worst_point.real()), number(r.worst_point.imag())}},
                        {"probes", r.probes}};
    j["first_violation"] = r.first_violation
                               ? nlohmann::json{number(r.first_violation->real()), number(r.first_violation->imag())}
                               : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const CLambdaResult& r) {
    return {{"value", number(r.value)}, {"divergent", r.divergent}, {"shells", r.shells}};
}

nlohmann::json to_json(const ConvergenceReport& r) {
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& s : r.summary)
        summary.push_back({{"degree", s.degree},
                           {"mean_dbl", number(s.mean_dbl)},
                           {"max_dbl", number(s.max_dbl)},
                           {"mean_real_fraction", number(s.mean_real_fraction)},
                           {"succeeded", s.succeeded},
                           {"failed", s.failed}});
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"degree", row.degree},
                        {"replica", row.replica},
                        {"status", std::string(to_string(row.status))},
                        {"dbl", number(row.dbl)},
                        {"real_fraction", number(row.real_fraction)},
                        {"max_backward_error", number(row.max_backward_error)},
                        {"error", row.error}});
    return {{"experiment", "convergence"},
            {"law", r.law},
            {"seed", r.seed},
            {"replicas", r.replicas},
            {"dictionary", std::string(kDictionaryId)},
            {"summary", summary},
            {"rows", rows}};
}

nlohmann::json to_json(const GoodnessOfFit& r) {
    nlohmann::json panels = nlohmann::json::array();
    for (const auto& p : r.panels) {
        nlohmann::json expected = nlohmann::json::array();
        for (double e : p.expected) expected.push_back(number(e));
        panels.push_back({{"name", p.name},
                          {"coordinate", p.coordinate},
                          {"edges", p.edges},
                          {"observed", p.observed},
                          {"expected", expected},
                          {"raw_mass", number(p.raw_mass)},
                          {"max_abs_z", number(p.max_abs_z)},
                          {"chi2", number(p.chi2)},
                          {"dof", p.dof}});
    }
    return {{"experiment", "oracle"},
            {"law", r.law_name},
            {"n", r.n},
            {"samples", r.samples},
            {"seed", r.seed},
            {"max_abs_z", number(r.max_abs_z)},
            {"chi2", number(r.chi2)},
            {"dof", r.dof},
            {"panels", panels}};
}

nlohmann::json to_json(const LdpReport& r) {
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& s : r.summary)
        summary.push_back({{"degree", s.degree},
                           {"mean_abs_ratio", number(s.mean_abs_ratio)},
                           {"max_abs_ratio", number(s.max_abs_ratio)},
                           {"succeeded", s.succeeded},
                           {"failed", s.failed}});
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"degree", row.degree},
                        {"replica", row.replica},
                        {"status", std::string(to_string(row.status))},
                        {"ratio", number(row.ratio)},
                        {"relative_error", number(row.relative_error)},
                        {"k", row.k},
                        {"error", row.error}});
    return {{"experiment", "ldp"},
            {"law", r.law},
            {"reference", std::string(to_string(r.reference))},
            {"seed", r.seed},
            {"replicas", r.replicas},
            {"fitted_c", number(r.fitted_c)},
            {"fitted_c_small", number(r.fitted_c_small)},
            {"envelope_holds", r.envelope_holds},
            {"max_ratio_decreasing", r.max_ratio_decreasing},
            {"summary", summary},
            {"rows", rows}};
}

std::string to_csv(const ConvergenceReport& r) {
    std::ostringstream out;
    out << "degree,replica,status,dbl,real_fraction,max_backward_error\n";
    for (const auto& row : r.rows)
        out << row.degree << ',' << row.replica << ',' << to_string(row.status) << ',' << fmt(row.dbl) << ','
            << fmt(row.real_fraction) << ',' << fmt(row.max_backward_error) << '\n';
    return out.str();
}

std::string to_csv(const LdpReport& r) {
    std::ostringstream out;
    out << "degree,replica,status,ratio,relative_error,k\n";
    for (const auto& row : r.rows)
        out << row.degree << ',' << row.replica << ',' << to_string(row.status) << ',' << fmt(row.ratio) << ','
            << fmt(row.relative_error) << ',' << row.k << '\n';
    return out.str();
}

std::string to_csv(const GoodnessOfFit& r) {
    std::ostringstream out;
    out << "panel,bin,lower,upper,observed,expected\n";
    for (const auto& p : r.panels)
        for (std::size_t b = 0; b < p.observed.size(); ++b)
            out << p.name << ',' << b << ',' << fmt(p.edges[b]) << ',' << fmt(p.edges[b + 1]) << ',' << p.observed[b]
                << ',' << fmt(p.expected[b] * static_cast<double>(r.samples)) << '\n';
    return out.str();
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << text;
}

}  // namespace kaczeros::io
