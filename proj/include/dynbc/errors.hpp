#pragma once

#include <stdexcept>
#include <string>

namespace dynbc {

// Kernel evaluated at a coincident or degenerate point (x == y, or the
// dilated point e^t x sitting on the unit sphere where a closed form blows up).
class SingularEvaluation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid user input: dimensions, parameters, config files.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure inside a solver (non-finite state, non-convergence, ...).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An empirical certificate came out with the wrong sign.
class CertificateFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dynbc
