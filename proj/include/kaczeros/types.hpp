#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace kaczeros {

using cplx = std::complex<double>;

/// Where the coefficients live: C, R or the half-line R+.
enum class Field { complex, real, positive };

std::string_view to_string(Field field) noexcept;
/// Accepts "C", "R", "R+" (and lowercase "complex", "real", "positive").
Field parse_field(std::string_view text);

/// a_0 .. a_n, lowest degree first.
struct CoefficientVector {
    std::vector<cplx> coeffs;
    Field field = Field::complex;

    std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    const cplx& leading() const { return coeffs.back(); }
};

/// Roots of a polynomial together with its leading coefficient.
struct RootSet {
    std::vector<cplx> roots;
    cplx leading{1.0, 0.0};
    bool residual_certified = false;
    double max_backward_error = std::numeric_limits<double>::quiet_NaN();

    std::size_t degree() const noexcept { return roots.size(); }
};

/// ã = (a_0/a_n, ..., a_{n-1}/a_n, 1).
struct NormalizedCoefficients {
    std::vector<cplx> entries;
};

}  // namespace kaczeros
