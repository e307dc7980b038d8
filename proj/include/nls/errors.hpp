#pragma once

#include <stdexcept>
#include <string>

namespace nls {

/// Invalid run configuration (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: quadrature non-convergence, blowup guard, divergence
/// (maps to CLI exit code 3).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nls
