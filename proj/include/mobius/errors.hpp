#pragma once

#include <stdexcept>
#include <string>

namespace mobius {

// Malformed or degenerate input data (parse failures, invariant violations,
// missing labels, width mismatches). CLI maps this to exit code 3.
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative numerical procedure failed to reach its tolerance within the
// configured iteration budget. CLI maps this to exit code 4.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& msg, double residual)
        : std::runtime_error(msg), residual_(residual) {}

    double residual() const { return residual_; }

  private:
    double residual_;
};

}  // namespace mobius
