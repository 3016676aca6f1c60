#pragma once

#include <stdexcept>
#include <string>

namespace digs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The 25x25 steady-state system is rank deficient (a zero population decay).
class SingularSystem : public Error {
 public:
  using Error::Error;
};

// A closed-form population or threshold formula divides by zero.
class DegenerateRelaxation : public Error {
 public:
  using Error::Error;
};

// Omega_b = Delta_b = 0: the dressing angle is undefined.
class DegenerateDressing : public Error {
 public:
  using Error::Error;
};

// An operation was called outside the parameter domain it is valid on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Adaptive Doppler quadrature did not reach its tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Malformed or invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace digs
