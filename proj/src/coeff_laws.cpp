#include "kaczeros/coeff_laws.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "kaczeros/errors.hpp"
#include "kaczeros/quadrature.hpp"

namespace kaczeros {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

bool in_field(Field field, cplx x) {
    switch (field) {
        case Field::complex: return true;
        case Field::real: return x.imag() == 0.0;
        case Field::positive: return x.imag() == 0.0 && x.real() >= 0.0;
    }
    return false;
}

// Lebesgue measure of {|x| <= delta} in the field, times the radial weight
// integral of |x|^alpha: the normalizer of the power-disk law.
double log_power_disk_norm(double alpha, double delta, Field field) {
    switch (field) {
        case Field::complex: return std::log(2.0 * kPi / (alpha + 2.0)) + (alpha + 2.0) * std::log(delta);
        case Field::real: return std::log(2.0 / (alpha + 1.0)) + (alpha + 1.0) * std::log(delta);
        case Field::positive: return std::log(1.0 / (alpha + 1.0)) + (alpha + 1.0) * std::log(delta);
    }
    return 0.0;
}

}  // namespace

std::string_view to_string(Field field) noexcept {
    switch (field) {
        case Field::complex: return "C";
        case Field::real: return "R";
        case Field::positive: return "R+";
    }
    return "?";
}

Field parse_field(std::string_view text) {
    if (text == "C" || text == "complex") return Field::complex;
    if (text == "R" || text == "real") return Field::real;
    if (text == "R+" || text == "positive") return Field::positive;
    throw InvalidArgument("unknown field '" + std::string(text) + "' (expected C, R or R+)");
}

EnvelopeParams::EnvelopeParams(double rho_, double r_, double R_) : rho(rho_), r(r_), R(R_) {
    if (!(rho > 0.0) || !(r > 0.0)) throw InvalidArgument("envelope parameters need rho > 0 and r > 0");
}

CoefficientLaw::CoefficientLaw(LawKind kind, Field field, std::string name)
    : kind_(kind), field_(field), name_(std::move(name)) {}

CoefficientLaw CoefficientLaw::complex_gaussian() {
    return CoefficientLaw(LawKind::complex_gaussian, Field::complex, "complex-gaussian-std");
}

CoefficientLaw CoefficientLaw::real_gaussian() {
    return CoefficientLaw(LawKind::real_gaussian, Field::real, "real-gaussian-std");
}

CoefficientLaw CoefficientLaw::exponential() {
    return CoefficientLaw(LawKind::exponential, Field::positive, "exponential-unit");
}

CoefficientLaw CoefficientLaw::uniform_disk(double delta, Field field) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidArgument("uniform-disk needs delta > 0");
    CoefficientLaw law(LawKind::uniform_disk, field, "uniform-disk");
    law.delta_ = delta;
    law.log_norm_ = log_power_disk_norm(0.0, delta, field);
    return law;
}

CoefficientLaw CoefficientLaw::power_disk(double alpha, double delta, Field field) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("power-disk needs alpha >= 0");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidArgument("power-disk needs delta > 0");
    CoefficientLaw law(LawKind::power_disk, field, "power-disk");
    law.alpha_ = alpha;
    law.delta_ = delta;
    law.log_norm_ = log_power_disk_norm(alpha, delta, field);
    return law;
}

CoefficientLaw CoefficientLaw::custom(std::string name, Field field, LogDensityFn log_density,
                                      SamplerFn sampler, bool radial) {
    if (!log_density) throw InvalidArgument("custom law needs a log-density callback");
    CoefficientLaw law(LawKind::custom, field, std::move(name));
    law.custom_log_density_ = std::move(log_density);
    law.sampler_ = std::move(sampler);
    law.radial_ = radial && field == Field::complex;
    return law;
}

std::string CoefficientLaw::short_name() const {
    auto fmt = [](double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    };
    switch (kind_) {
        case LawKind::complex_gaussian: return "cgauss";
        case LawKind::real_gaussian: return "rgauss";
        case LawKind::exponential: return "exp";
        case LawKind::uniform_disk: return "udisk" + fmt(delta_) + (field_ == Field::complex ? "" : std::string(to_string(field_)));
        case LawKind::power_disk:
            return "pdisk" + fmt(alpha_) + "_" + fmt(delta_) + (field_ == Field::complex ? "" : std::string(to_string(field_)));
        case LawKind::custom: return name_;
    }
    return name_;
}

double CoefficientLaw::log_density(cplx x) const {
    if (!in_field(field_, x)) return -kInf;
    switch (kind_) {
        case LawKind::complex_gaussian: return -std::norm(x) - std::log(kPi);
        case LawKind::real_gaussian: return -0.5 * x.real() * x.real() - 0.5 * std::log(2.0 * kPi);
        case LawKind::exponential: return -x.real();
        case LawKind::uniform_disk: return std::abs(x) <= delta_ ? -log_norm_ : -kInf;
        case LawKind::power_disk: {
            const double m = std::abs(x);
            if (m > delta_) return -kInf;
            if (alpha_ == 0.0) return -log_norm_;
            return alpha_ * std::log(m) - log_norm_;
        }
        case LawKind::custom: return custom_log_density_(x);
    }
    return -kInf;
}

cplx CoefficientLaw::sample(PhiloxStream& rng) const {
    switch (kind_) {
        case LawKind::complex_gaussian: return rng.complex_normal();
        case LawKind::real_gaussian: return {rng.normal(), 0.0};
        case LawKind::exponential: return {rng.exponential(), 0.0};
        case LawKind::uniform_disk:
        case LawKind::power_disk: {
            const double u = rng.uniform();
            if (field_ == Field::complex) {
                const double radius = delta_ * std::pow(u, 1.0 / (alpha_ + 2.0));
                const double angle = 2.0 * kPi * rng.uniform();
                return std::polar(radius, angle);
            }
            const double radius = delta_ * std::pow(u, 1.0 / (alpha_ + 1.0));
            if (field_ == Field::positive) return {radius, 0.0};
            return {rng.uniform() < 0.5 ? -radius : radius, 0.0};
        }
        case LawKind::custom:
            if (!sampler_) throw UnsupportedOperation("custom law '" + name_ + "' has no sampler");
            return sampler_(rng);
    }
    return {};
}

std::optional<double> CoefficientLaw::support_radius() const {
    if (kind_ == LawKind::uniform_disk || kind_ == LawKind::power_disk) return delta_;
    return std::nullopt;
}

std::optional<EnvelopeParams> CoefficientLaw::envelope() const {
    switch (kind_) {
        case LawKind::complex_gaussian: return EnvelopeParams(2.0, 1.0, 0.0);
        case LawKind::real_gaussian: return EnvelopeParams(2.0, 0.5, 0.0);
        case LawKind::exponential: return EnvelopeParams(1.0, 1.0, 0.0);
        case LawKind::uniform_disk:
        case LawKind::power_disk:
            // sup over the disk of log g(x) + |x| is attained at |x| = delta.
            return EnvelopeParams(1.0, 1.0, alpha_ * std::log(delta_) - log_norm_ + delta_);
        case LawKind::custom: return std::nullopt;
    }
    return std::nullopt;
}

bool CoefficientLaw::satisfies_hypotheses() const {
    switch (kind_) {
        case LawKind::complex_gaussian:
        case LawKind::real_gaussian:
        case LawKind::exponential:
        case LawKind::uniform_disk: return true;
        case LawKind::power_disk: return alpha_ == 0.0;
        case LawKind::custom: return false;
    }
    return false;
}

double CoefficientLaw::small_ball_radius() const {
    if (auto radius = support_radius()) return *radius;
    return 1.0;
}

nlohmann::json CoefficientLaw::to_json() const {
    nlohmann::json params = nlohmann::json::object();
    switch (kind_) {
        case LawKind::uniform_disk:
            params["delta"] = delta_;
            params["field"] = to_string(field_);
            break;
        case LawKind::power_disk:
            params["alpha"] = alpha_;
            params["delta"] = delta_;
            params["field"] = to_string(field_);
            break;
        case LawKind::custom: params["field"] = to_string(field_); break;
        default: break;
    }
    return {{"kind", kind_ == LawKind::custom ? "custom" : name_}, {"name", name_}, {"params", params}};
}

CoefficientLaw CoefficientLaw::from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
        throw InvalidArgument("law spec must be an object with a string \"kind\"");
    const std::string kind = spec["kind"];
    const nlohmann::json params = spec.value("params", nlohmann::json::object());
    if (!params.is_object()) throw InvalidArgument("law \"params\" must be an object");
    for (const auto& [key, value] : params.items()) {
        if (key != "delta" && key != "alpha" && key != "field")
            throw InvalidArgument("unknown law parameter '" + key + "'");
    }
    const Field field = parse_field(params.value("field", std::string("C")));
    if (kind == "complex-gaussian-std") return complex_gaussian();
    if (kind == "real-gaussian-std") return real_gaussian();
    if (kind == "exponential-unit") return exponential();
    if (kind == "uniform-disk") return uniform_disk(params.value("delta", 1.0), field);
    if (kind == "power-disk") {
        if (!params.contains("alpha")) throw InvalidArgument("power-disk needs params.alpha");
        return power_disk(params["alpha"].get<double>(), params.value("delta", 1.0), field);
    }
    if (kind == "custom") throw UnsupportedOperation("custom laws cannot be built from JSON; use the C++/Python API");
    throw InvalidArgument("unknown law kind '" + kind + "'");
}

CoefficientLaw CoefficientLaw::from_token(const std::string& token) {
    std::vector<std::string> parts;
    std::stringstream ss(token);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.empty()) throw InvalidArgument("empty law token");
    auto number = [&](std::size_t i, double fallback) {
        if (i >= parts.size()) return fallback;
        try {
            std::size_t used = 0;
            const double v = std::stod(parts[i], &used);
            if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
            return v;
        } catch (const std::exception&) {
            throw InvalidArgument("bad number '" + parts[i] + "' in law token '" + token + "'");
        }
    };
    const std::string& head = parts[0];
    if (head == "cgauss" || head == "complex-gaussian-std") return complex_gaussian();
    if (head == "rgauss" || head == "real-gaussian-std") return real_gaussian();
    if (head == "exp" || head == "exponential-unit") return exponential();
    if (head == "udisk" || head == "uniform-disk") {
        const Field field = parts.size() > 2 ? parse_field(parts[2]) : Field::complex;
        return uniform_disk(number(1, 1.0), field);
    }
    if (head == "pdisk" || head == "power-disk") {
        if (parts.size() < 2) throw InvalidArgument("power-disk token needs alpha: pdisk:alpha[:delta[:field]]");
        const Field field = parts.size() > 3 ? parse_field(parts[3]) : Field::complex;
        return power_disk(number(1, 0.0), number(2, 1.0), field);
    }
    throw InvalidArgument("unknown law '" + token + "'");
}

CoefficientVector sample_coeffs(const CoefficientLaw& law, std::size_t n, PhiloxStream& rng) {
    if (n < 1) throw InvalidArgument("sample_coeffs needs n >= 1");
    if (!law.has_sampler()) throw UnsupportedOperation("law '" + law.name() + "' has no sampler");
    CoefficientVector out;
    out.field = law.field();
    out.coeffs.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out.coeffs.push_back(law.sample(rng));
    return out;
}

CoefficientVector sample_coeffs(const CoefficientLaw& law, std::size_t n, std::uint64_t seed) {
    PhiloxStream rng(seed, 0);
    return sample_coeffs(law, n, rng);
}

double log_density(const CoefficientLaw& law, cplx x) { return law.log_density(x); }

EnvelopeReport check_envelope(const CoefficientLaw& law, const EnvelopeParams& params, const ProbeGrid& grid) {
    if (grid.radii < 2 || grid.angles < 1 || !(grid.min_radius > 0.0) || !(grid.max_radius > grid.min_radius))
        throw InvalidArgument("probe grid needs radii >= 2, angles >= 1 and 0 < min_radius < max_radius");
    EnvelopeReport report;
    auto probe = [&](cplx x) {
        ++report.probes;
        const double bound = -params.r * std::pow(std::abs(x), params.rho) + params.R;
        const double excess = law.log_density(x) - bound;
        if (excess > report.worst_excess) {
            report.worst_excess = excess;
            report.worst_point = x;
        }
        if (excess > 1e-12 * (1.0 + std::abs(bound))) {
            report.holds = false;
            if (!report.first_violation) report.first_violation = x;
        }
    };

    std::vector<cplx> directions;
    switch (law.field()) {
        case Field::complex:
            for (int j = 0; j < grid.angles; ++j)
                directions.push_back(std::polar(1.0, 2.0 * kPi * j / grid.angles));
            break;
        case Field::real: directions = {1.0, -1.0}; break;
        case Field::positive: directions = {1.0}; break;
    }
    probe(0.0);
    const double log_lo = std::log(grid.min_radius);
    const double log_hi = std::log(grid.max_radius);
    for (int i = 0; i < grid.radii; ++i) {
        const double radius = std::exp(log_lo + (log_hi - log_lo) * i / (grid.radii - 1));
        for (const cplx& dir : directions) probe(radius * dir);
    }
    return report;
}

namespace {

// Integral of h over the shell a <= |x| <= b of the field.
double shell_integral(const CoefficientLaw& law, const std::function<double(cplx)>& h, double a, double b) {
    constexpr double kTol = 1e-13;
    switch (law.field()) {
        case Field::complex:
            if (law.radial()) {
                return quad::integrate([&](double r) { return 2.0 * kPi * r * h(r); }, a, b, kTol).value;
            }
            return quad::integrate(
                       [&](double r) {
                           return r * quad::periodic_trapezoid([&](double t) { return h(std::polar(r, t)); }, 64);
                       },
                       a, b, kTol)
                .value;
        case Field::real:
            return quad::integrate([&](double x) { return h(x) + h(-x); }, a, b, kTol).value;
        case Field::positive: return quad::integrate([&](double x) { return h(x); }, a, b, kTol).value;
    }
    return 0.0;
}

}  // namespace

CLambdaResult c_lambda(const CoefficientLaw& law, double delta, double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("c_lambda needs lambda > 0");
    if (!(delta > 0.0)) throw InvalidArgument("c_lambda needs delta > 0");
    auto h = [&](cplx x) {
        const double lg = law.log_density(x);
        return lg == -kInf ? kInf : std::exp(-lambda * lg);
    };

    constexpr int kMaxShells = 1000;
    constexpr int kGrowthRun = 8;
    constexpr double kGrowthRatio = 1.0 - 1e-6;

    CLambdaResult result;
    double total = 0.0;
    double previous = 0.0;
    double last_ratio = 1.0;
    int growth_run = 0;
    double outer = delta;
    for (int k = 0; k < kMaxShells; ++k) {
        const double inner = 0.5 * outer;
        const double shell = shell_integral(law, h, inner, outer);
        result.shells = k + 1;
        if (!std::isfinite(shell)) {
            result.value = kInf;
            result.divergent = true;
            return result;
        }
        total += shell;
        if (k > 0) {
            growth_run = shell >= kGrowthRatio * previous ? growth_run + 1 : 0;
            if (growth_run >= kGrowthRun) {
                result.value = kInf;
                result.divergent = true;
                return result;
            }
            const double ratio = previous > 0.0 ? shell / previous : 0.0;
            last_ratio = ratio;
            if (k >= kGrowthRun && ratio < 1.0 && shell <= 1e-17 * total) {
                total += shell * ratio / (1.0 - ratio);
                result.value = total;
                return result;
            }
        }
        previous = shell;
        outer = inner;
    }
    // Slowly shrinking shells: close with the geometric tail of the last ratio.
    if (last_ratio < 1.0) total += previous * last_ratio / (1.0 - last_ratio);
    result.value = total;
    return result;
}

double normalization_integral(const CoefficientLaw& law, double radius) {
    std::vector<double> breaks;
    if (auto s = law.support_radius()) breaks.push_back(*s);
    constexpr double kTol = 1e-12;
    auto g = [&](cplx x) { return std::exp(law.log_density(x)); };
    switch (law.field()) {
        case Field::complex:
            if (law.radial()) {
                return quad::integrate([&](double r) { return 2.0 * kPi * r * g(r); }, 0.0, radius, breaks, kTol).value;
            }
            return quad::integrate(
                       [&](double r) {
                           return r * quad::periodic_trapezoid([&](double t) { return g(std::polar(r, t)); }, 128);
                       },
                       0.0, radius, breaks, kTol)
                .value;
        case Field::real:
            return quad::integrate([&](double x) { return g(x) + g(-x); }, 0.0, radius, breaks, kTol).value;
        case Field::positive: return quad::integrate([&](double x) { return g(x); }, 0.0, radius, breaks, kTol).value;
    }
    return 0.0;
}

}  // namespace kaczeros
