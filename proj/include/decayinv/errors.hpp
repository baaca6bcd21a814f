#pragma once

#include <stdexcept>
#include <string>

namespace decayinv {

/// Invalid argument or precondition violation (bad window, r out of range, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite section is singular or below the reciprocal-condition floor.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, double rcond)
      : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// Iterative method failed to converge. Carries whatever partial value exists.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double partial = 0.0)
      : std::runtime_error(what), partial_(partial) {}
  double partial() const noexcept { return partial_; }

 private:
  double partial_;
};

/// A monotone scan ran past its cap without meeting its criterion.
class ScanCapError : public NumericalError {
 public:
  ScanCapError(const std::string& what, long long cap)
      : NumericalError(what, static_cast<double>(cap)), cap_(cap) {}
  long long cap() const noexcept { return cap_; }

 private:
  long long cap_;
};

/// Value exceeds double range; the natural logarithm is still available.
class RangeError : public std::range_error {
 public:
  RangeError(const std::string& what, double log_value)
      : std::range_error(what), log_value_(log_value) {}
  double log_value() const noexcept { return log_value_; }

 private:
  double log_value_;
};

}  // namespace decayinv
