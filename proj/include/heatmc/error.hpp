#pragma once

#include <stdexcept>
#include <string>

namespace heatmc {

/// Bad user input: malformed config, wrong dimensions, invalid parameters.
/// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear solve could not produce an accurate answer.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}

  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// Filesystem or persistence failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heatmc
