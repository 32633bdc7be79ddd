#pragma once

#include <stdexcept>
#include <string>

namespace ksobs {

// Precondition violated by a caller-supplied value (bad index, wrong length,
// unknown norm kind, aliasing grid).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A matrix that must be invertible (or positive definite) is not, which means
// the sensor set is inadmissible for the requested construction.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Nonfinite or runaway coefficients during time integration.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double time, double norm, const std::string& what)
      : std::runtime_error(what), time_(time), norm_(norm) {}

  double time() const noexcept { return time_; }
  double norm() const noexcept { return norm_; }

 private:
  double time_;
  double norm_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ksobs
