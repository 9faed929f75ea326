#pragma once

#include <stdexcept>
#include <string>

namespace ordspace {

/// Malformed input text: space files, element syntax, report files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on input that violates its stated preconditions.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A space failed one of the ordered-space axioms.
class ValidationError : public PreconditionError {
 public:
  ValidationError(std::string axiom, const std::string& detail)
      : PreconditionError(axiom + ": " + detail), axiom_(std::move(axiom)) {}
  const std::string& axiom() const { return axiom_; }

 private:
  std::string axiom_;
};

class NotArchimedean : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotOrderIdeal : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Exact and approximate scalars were combined without an explicit conversion.
class ModeMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The input is valid but outside what this implementation can compute.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A refinement budget ran out before the requested tolerance was met.
class ToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-check failed; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ordspace
