#pragma once

#include <stdexcept>
#include <string>

namespace dcov {

/// Malformed input or a violated precondition (bad shapes, bad indices, bad CSV).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request outside the numerical domain of a method, e.g. beta >= 2 for the
/// characteristic-function definitions, or a quadrature tolerance that was not met.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace dcov
