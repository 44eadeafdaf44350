#pragma once

#include <stdexcept>

namespace bwc {

// Invalid configuration or unsupported parameter combination; CLI exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Computation would exceed a configured memory or enumeration cap; CLI exit code 3.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical contract violated, e.g. an eigenvalue below the PSD tolerance.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked mathematical property failed on concrete data.
struct property_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bwc
