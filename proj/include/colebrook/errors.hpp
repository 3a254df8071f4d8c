#pragma once

#include <stdexcept>
#include <string>

namespace colebrook {

// Argument outside the mathematical domain of a formula (log of a
// non-positive number, 1/sqrt(0), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iteration step whose denominator vanished.
class SingularStepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid selector, flag or option combination.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The high-precision reference solve failed to certify a root.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace colebrook
