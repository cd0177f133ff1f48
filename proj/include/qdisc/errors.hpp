#pragma once

#include <stdexcept>
#include <string>

namespace qdisc {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes, so new failure modes should derive from the closest category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Qubit budget exceeded, register too narrow for a value, or n out of range.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Circuit and state disagree on qubit count, or a gate index is invalid.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Two registers that must be disjoint share a qubit.
class RegisterConflictError : public Error {
 public:
  using Error::Error;
};

// An ancilla/output register was not |0> on entry (verification mode only).
class DirtyAncillaError : public Error {
 public:
  using Error::Error;
};

// A probability or other scalar argument lies outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyFeasibleRegionError : public Error {
 public:
  using Error::Error;
};

class AmplificationFailureError : public Error {
 public:
  AmplificationFailureError(const std::string& what, double measured_success)
      : Error(what), measured_success_(measured_success) {}
  double measured_success() const noexcept { return measured_success_; }

 private:
  double measured_success_;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Scene or obstacle fails validation (bounds, ordering, convexity).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class RunawayError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdisc
