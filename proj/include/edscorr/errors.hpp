#pragma once

#include <stdexcept>
#include <string>

namespace edscorr {

// Caller passed arguments that violate an operation's contract
// (mismatched fields, out-of-range parameters, unknown options).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inversion of zero in F_p. Kept distinct so ladder and recurrence code can
// catch it and fall back.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A mathematical precondition of an operation does not hold for the given
// inputs (e.g. psi_n(P) = 0 where a nonzero value is required).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested work exceeds a configured cap (enumeration cap, tuple budget).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace edscorr
