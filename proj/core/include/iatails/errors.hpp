#pragma once

#include <stdexcept>
#include <string>

namespace iatails {

// Base class for everything thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameter values or arguments outside an operation's domain.
struct domain_error : error {
  using error::error;
};

// Quadrature, root bracketing, or optimizer failure.
struct numeric_error : error {
  using error::error;
};

// Not enough samples/tuples for the requested operation.
struct insufficient_data_error : error {
  using error::error;
};

// A requested power moment does not exist for the given shape.
struct moment_divergence_error : domain_error {
  using domain_error::domain_error;
};

// Moment inversion produced a value outside the admissible range.
struct inversion_error : numeric_error {
  using numeric_error::numeric_error;
};

// Root search found no sign change in the bracket.
struct no_solution_error : numeric_error {
  using numeric_error::numeric_error;
};

struct io_error : error {
  using error::error;
};

}  // namespace iatails
