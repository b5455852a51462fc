#pragma once

#include <stdexcept>
#include <string>

namespace afc {

/// Invalid input: a parameter outside the validity domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical kernel could not reach its tolerance (quadrature, grid
/// resolution, window overflow, singular sample).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, double residual = 0.0)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace afc
