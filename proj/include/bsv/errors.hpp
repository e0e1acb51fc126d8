#pragma once

#include <stdexcept>
#include <string>

namespace bsv {

// Bad arguments to an operation (wrong shape, empty list, negative gain, ...).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Invalid configuration: bad units, degenerate widths, grid too narrow, ...
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wavelength query outside a material's Sellmeier validity window.
struct RangeError : ConfigError {
  using ConfigError::ConfigError;
};

// Overflow / NaN during evaluation; maps to CLI exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bsv
