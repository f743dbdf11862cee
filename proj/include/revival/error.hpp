#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revival {

/// Invalid input or violated precondition. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver a trustworthy result (exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigensolver ran out of iterations before the off-diagonal mass vanished.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : NumericError(what), iterations_(iterations), residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Fock-basis truncation too small to hold the state to the required tail mass.
class TruncationError : public NumericError {
 public:
  TruncationError(const std::string& what, std::size_t required)
      : NumericError(what), required_(required) {}

  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

}  // namespace revival
