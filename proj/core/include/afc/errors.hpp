#pragma once

#include <stdexcept>
#include <string>

namespace afc {

// Bad user input: malformed files, invalid parameters, infeasible settings.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure at run time: singular systems, non-absorbing chains,
// trajectory caps.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace afc
