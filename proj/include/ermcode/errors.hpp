#pragma once

#include <stdexcept>
#include <string>

namespace ermcode {

/// Argument outside the documented parameter range (bad m, q, mask, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction was asked to run on input that does not satisfy its
/// hypotheses, e.g. a restriction whose graph is not a path.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive work requested beyond the configured budget.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace ermcode
