#pragma once

#include <stdexcept>
#include <string>

namespace purposedyn {

/// Parameter or input outside its valid domain.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested state transition needs negative purpose (r < 0).
class InfeasibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation not defined for the given kind of input (e.g. a spread on an
/// empirical distribution).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical routine detected something that should be impossible for
/// valid inputs.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace purposedyn
