#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace revolv {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad dimension, point outside
/// the domain, support outside its window, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to deliver the requested accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivision depth before meeting its
/// tolerance. Carries the best available estimate.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : NumericalError(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// An iterative solver did not converge. `history` holds the residual norm
/// after each iteration.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history)
      : NumericalError(what), history_(std::move(history)) {}

  const std::vector<double>& history() const noexcept { return history_; }
  double last_residual() const noexcept {
    return history_.empty() ? 0.0 : history_.back();
  }

 private:
  std::vector<double> history_;
};

}  // namespace revolv
