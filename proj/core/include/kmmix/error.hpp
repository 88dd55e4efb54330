#pragma once

#include <stdexcept>
#include <string>

namespace kmmix {

// Raised for parameter or argument validation failures.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an iterative numerical scheme exhausts its refinement budget.
// Carries the last two estimates so callers can judge how far off it was.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_(previous), last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace kmmix
