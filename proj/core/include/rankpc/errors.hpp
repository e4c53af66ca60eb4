#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rankpc {

/// Raised when a rank statistic meets two equal observations in one column.
class TieError : public std::invalid_argument {
 public:
  TieError(const std::string& what, double tied_value)
      : std::invalid_argument(what), tied_value_(tied_value) {}

  double tied_value() const noexcept { return tied_value_; }

 private:
  double tied_value_;
};

/// A denominator 1 - rho^2 in the partial-correlation recursion vanished.
class DegenerateCorrelationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A principal submatrix that had to be inverted is not positive definite.
class ConditioningError : public std::domain_error {
 public:
  ConditioningError(const std::string& what, std::vector<int> indices)
      : std::domain_error(what), indices_(std::move(indices)) {}

  /// Row/column indices of the offending submatrix, in factorization order.
  const std::vector<int>& indices() const noexcept { return indices_; }

 private:
  std::vector<int> indices_;
};

}  // namespace rankpc
