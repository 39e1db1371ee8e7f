#pragma once

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "kaczeros/coeff_laws.hpp"
#include "kaczeros/harness.hpp"
#include "kaczeros/measure.hpp"
#include "kaczeros/polynomial.hpp"
#include "kaczeros/rate_function.hpp"
#include "kaczeros/zero_density.hpp"

namespace kaczeros::io {

/// Finite doubles as numbers; inf, -inf and nan as the strings "inf", "-inf", "nan".
nlohmann::json number(double x);
double parse_number(const nlohmann::json& j);

/// CSV with the exact header "re,im", one complex value per row, %.17g.
void write_complex_csv(std::ostream& out, std::span<const cplx> values);
std::string complex_csv(std::span<const cplx> values);
/// Throws InvalidArgument on a missing/different header or malformed rows.
std::vector<cplx> read_complex_csv(std::istream& in);
std::vector<cplx> read_complex_csv_file(const std::filesystem::path& path);

nlohmann::json complex_array(std::span<const cplx> values);

/// {leading_re, leading_im, degree, max_backward_error}.
nlohmann::json roots_sidecar(const RootSet& roots);
RootSet read_roots(const std::filesystem::path& csv_path);

nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const BLDistance& d);
nlohmann::json to_json(const RateReport& r);
nlohmann::json to_json(const DensityReport& r);
nlohmann::json to_json(const SandwichReport& r);
nlohmann::json to_json(const EnvelopeReport& r);
nlohmann::json to_json(const CLambdaResult& r);
nlohmann::json to_json(const ConvergenceReport& r);
nlohmann::json to_json(const GoodnessOfFit& r);
nlohmann::json to_json(const LdpReport& r);

/// Row-oriented CSV of the same reports (one row per replica / bin).
std::string to_csv(const ConvergenceReport& r);
std::string to_csv(const LdpReport& r);
std::string to_csv(const GoodnessOfFit& r);

/// Deterministic serialization: two-space indent, trailing newline.
std::string dump(const nlohmann::json& j);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace kaczeros::io
