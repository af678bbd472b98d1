#pragma once

#include <stdexcept>
#include <string>

namespace lrm {

// Bad parameters or preconditions. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Filesystem or parse failures. The CLI maps this to exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A chain whose boundary is nonempty was passed where a cycle is required.
class OpenChainError : public std::domain_error {
 public:
  OpenChainError() : std::domain_error("open chain: boundary is nonempty") {}
};

class OddSyndromeError : public std::domain_error {
 public:
  OddSyndromeError() : std::domain_error("odd syndrome: anyon count must be even") {}
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(int iterations, double residual)
      : std::runtime_error("non-convergence after " + std::to_string(iterations) +
                           " iterations, relative residual " + std::to_string(residual)),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class HorizonExceeded : public std::runtime_error {
 public:
  explicit HorizonExceeded(std::size_t censored)
      : std::runtime_error("horizon exceeded: " + std::to_string(censored) +
                           " trials censored"),
        censored_(censored) {}
  std::size_t censored() const { return censored_; }

 private:
  std::size_t censored_;
};

}  // namespace lrm
