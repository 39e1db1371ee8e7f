#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "kaczeros/rng.hpp"
#include "kaczeros/types.hpp"

namespace kaczeros {

/// g(z) <= exp(-r |z|^rho + R) for all z.
struct EnvelopeParams {
    double rho = 1.0;
    double r = 1.0;
    double R = 0.0;

    EnvelopeParams() = default;
    EnvelopeParams(double rho, double r, double R);
};

enum class LawKind { complex_gaussian, real_gaussian, exponential, uniform_disk, power_disk, custom };

/// Density g of i.i.d. polynomial coefficients with respect to Lebesgue measure on its field.
///
/// Built-in laws:
///   complex-gaussian-std  exp(-|z|^2)/pi on C
///   real-gaussian-std     exp(-x^2/2)/sqrt(2 pi) on R
///   exponential-unit      exp(-x) on R+
///   uniform-disk(delta)   uniform on {|x| <= delta} of C, R or R+
///   power-disk(alpha, delta)  proportional to |x|^alpha on {|x| <= delta}
/// Custom laws carry a log-density callback and optionally a sampler; the
/// caller is responsible for normalization (see normalization_integral).
class CoefficientLaw {
public:
    using LogDensityFn = std::function<double(cplx)>;
    using SamplerFn = std::function<cplx(PhiloxStream&)>;

    static CoefficientLaw complex_gaussian();
    static CoefficientLaw real_gaussian();
    static CoefficientLaw exponential();
    static CoefficientLaw uniform_disk(double delta, Field field = Field::complex);
    static CoefficientLaw power_disk(double alpha, double delta, Field field = Field::complex);
    /// `radial` declares g(z) = g(|z|) (only meaningful on C); it lets
    /// quadrature skip the angular direction.
    static CoefficientLaw custom(std::string name, Field field, LogDensityFn log_density,
                                 SamplerFn sampler = nullptr, bool radial = false);

    LawKind kind() const noexcept { return kind_; }
    Field field() const noexcept { return field_; }
    /// Stable identifier: "complex-gaussian-std", "uniform-disk", ..., or the custom name.
    const std::string& name() const noexcept { return name_; }
    /// Short token used in file names ("cgauss", "udisk", ...).
    std::string short_name() const;
    double alpha() const noexcept { return alpha_; }
    double delta() const noexcept { return delta_; }
    bool radial() const noexcept { return radial_; }
    bool has_sampler() const noexcept { return kind_ != LawKind::custom || static_cast<bool>(sampler_); }

    /// log g(x); -inf outside the support or outside the field.
    double log_density(cplx x) const;
    cplx sample(PhiloxStream& rng) const;

    /// Radius of a bounded support, if any.
    std::optional<double> support_radius() const;

    /// Envelope parameters stored for the built-in laws (none for custom laws).
    std::optional<EnvelopeParams> envelope() const;
    /// Whether the law is accepted as satisfying both growth hypotheses
    /// (tail envelope and integrability of g^{-lambda} near zero).
    bool satisfies_hypotheses() const;
    /// Radius used for the small-ball integrability check.
    double small_ball_radius() const;

    nlohmann::json to_json() const;
    /// {"kind": ..., "params": {...}}; see schema/law.schema.json.
    static CoefficientLaw from_json(const nlohmann::json& spec);
    /// Short CLI names: cgauss, rgauss, exp, udisk[:delta[:field]], pdisk:alpha[:delta[:field]].
    static CoefficientLaw from_token(const std::string& token);

private:
    CoefficientLaw(LawKind kind, Field field, std::string name);

    LawKind kind_;
    Field field_;
    std::string name_;
    double alpha_ = 0.0;
    double delta_ = 0.0;
    double log_norm_ = 0.0;  // log of the normalizing constant for disk laws
    bool radial_ = true;
    LogDensityFn custom_log_density_;
    SamplerFn sampler_;
};

/// n+1 i.i.d. draws from `law`, stream (seed, 0).
CoefficientVector sample_coeffs(const CoefficientLaw& law, std::size_t n, std::uint64_t seed);
CoefficientVector sample_coeffs(const CoefficientLaw& law, std::size_t n, PhiloxStream& rng);

double log_density(const CoefficientLaw& law, cplx x);

struct ProbeGrid {
    int radii = 512;
    int angles = 64;
    double min_radius = 1e-6;
    double max_radius = 50.0;
};

struct EnvelopeReport {
    bool holds = true;
    /// Largest value of log g(x) - (-r|x|^rho + R) over the probes.
    double worst_excess = -std::numeric_limits<double>::infinity();
    cplx worst_point{0.0, 0.0};
    std::optional<cplx> first_violation;
    std::size_t probes = 0;
};

/// Probe-grid test of g(x) <= exp(-r|x|^rho + R): log-spaced radii times
/// equally spaced angles (two signs on R, one on R+), plus the origin.
EnvelopeReport check_envelope(const CoefficientLaw& law, const EnvelopeParams& params,
                              const ProbeGrid& grid = {});

struct CLambdaResult {
    double value = 0.0;     // +inf when divergent
    bool divergent = false;
    int shells = 0;
};

/// c(lambda) = integral over {|x| <= delta} of g(x)^{-lambda}, by dyadic shells toward the origin.
/// Divergence is declared when 8 consecutive shells fail to shrink.
CLambdaResult c_lambda(const CoefficientLaw& law, double delta, double lambda);

/// Integral of g over the field within |x| <= radius.
double normalization_integral(const CoefficientLaw& law, double radius = 60.0);

}  // namespace kaczeros
