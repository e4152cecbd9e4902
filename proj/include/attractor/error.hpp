#pragma once

#include <stdexcept>
#include <string>

namespace attractor {

/// Invalid input: bad domain, constants outside their window, malformed config.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by bound constructors that only make sense in the nontrivial regime.
class TrivialRegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A spectral coefficient exceeded the overflow guard during time stepping.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double last_stable_t)
      : std::runtime_error(what), last_stable_t_(last_stable_t) {}

  double last_stable_t() const noexcept { return last_stable_t_; }

 private:
  double last_stable_t_;
};

}  // namespace attractor
