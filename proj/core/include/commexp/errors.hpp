#pragma once

#include <stdexcept>
#include <string>

namespace commexp {

// Malformed or out-of-range user input (bad JSON, dimension > 3, huge entries).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called on inputs that violate its stated preconditions.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Principal logarithm of a singular (or numerically singular) matrix.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// A rejection-sampling generator exhausted its retry budget.
class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace commexp
