#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Input outside the domain of an operation (non-positive distance, k <= 0, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation at a pole or a vanishing denominator.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The plasma model (gamma = 0) has no eddy-current branch cut.
class NoCutError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature, root finding or series summation did not reach its target.
/// Carries the best estimate available when the budget ran out.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best_estimate, double achieved_tol)
      : std::runtime_error(what), best_estimate_(best_estimate), achieved_tol_(achieved_tol) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_tol() const noexcept { return achieved_tol_; }

 private:
  double best_estimate_;
  double achieved_tol_;
};

}  // namespace casimir
