#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dirac {

/// Caller violated a precondition (mismatched charts, bad counts, malformed input).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point or parameter lies outside the admissible domain (e.g. r <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-finite intermediate value or runaway integration.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The constraint matrix is singular (system is not Second Class at this point).
class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(const std::string& what, double det, std::vector<double> point)
      : std::runtime_error(what), det_(det), point_(std::move(point)) {}

  double det() const noexcept { return det_; }
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  double det_;
  std::vector<double> point_;
};

}  // namespace dirac
