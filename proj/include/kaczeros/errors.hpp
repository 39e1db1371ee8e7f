#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace kaczeros {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A root configuration that is not admissible for the requested ensemble
/// (e.g. not closed under conjugation for a real ensemble).
class InvalidConfiguration : public Error {
public:
    using Error::Error;
};

class UnsupportedOperation : public Error {
public:
    using Error::Error;
};

/// Quadrature or other numeric routine did not reach its tolerance.
class NumericFailure : public Error {
public:
    NumericFailure(const std::string& what, std::string diagnostics)
        : Error(what), diagnostics_(std::move(diagnostics)) {}

    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    std::string diagnostics_;
};

/// Root finder exhausted its iteration budget. Carries the best iterate and
/// the per-root relative backward errors at that iterate.
class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what,
                       std::vector<std::complex<double>> best_iterate,
                       std::vector<double> residuals)
        : Error(what),
          best_iterate_(std::move(best_iterate)),
          residuals_(std::move(residuals)) {}

    const std::vector<std::complex<double>>& best_iterate() const noexcept { return best_iterate_; }
    const std::vector<double>& residuals() const noexcept { return residuals_; }

private:
    std::vector<std::complex<double>> best_iterate_;
    std::vector<double> residuals_;
};

}  // namespace kaczeros
