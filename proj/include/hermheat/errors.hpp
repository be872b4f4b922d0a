#pragma once

#include <stdexcept>
#include <string>

namespace hermheat {

// Invalid configuration or parameter-regime violation. The CLI maps this to
// exit code 2; library callers get the violated constraint in what().
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A computation path that exists but is not defined for these inputs,
// e.g. the Mehler kernel with beta != 1 or t below its trust region.
struct UnsupportedPath : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Luxemburg bracket expansion exhausted without the modular dropping below 1:
// numerically the field lies outside L^phi at this resolution.
struct NormUnbounded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Picard iteration failed to converge within the configured budget.
struct NonConvergent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Spectral tail carries too much energy for the configured degree.
struct UnderResolved : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hermheat
