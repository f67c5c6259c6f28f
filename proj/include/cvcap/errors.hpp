#pragma once

#include <stdexcept>
#include <string>

namespace cvcap {

/// Invalid input: wrong dimensions, out-of-range parameters, unphysical states.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Noise that is not of the thermal-like isotropic form required by the
/// capacity formulas.
struct shape_error : validation_error {
  using validation_error::validation_error;
};

/// Numerical failure: eigensolver non-convergence, root solver stagnation.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A root/threshold search whose bracket does not contain a sign change.
struct bracketing_error : numeric_error {
  using numeric_error::numeric_error;
};

/// Output file cannot be created or written.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cvcap
