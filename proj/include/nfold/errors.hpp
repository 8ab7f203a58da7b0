#pragma once

#include <stdexcept>
#include <string>

namespace nfold {

/// Operand shapes do not agree (vector lengths, matrix blocks, bound vectors).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured element-count, time, step or enumeration cap was hit.
/// Never used to signal an empty result.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance data fails semantic validation (negative capacity, bad edge, ...).
class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A decoded solution violates a constraint it must satisfy. Indicates a bug
/// in an encoder or solver rather than bad input.
class ConstraintViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact evaluation was requested for an objective that only supports
/// comparisons.
class OracleEvaluationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nfold
