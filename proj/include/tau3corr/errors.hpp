#pragma once

#include <stdexcept>
#include <string>

namespace tau3corr {

/// A requested table or transform does not fit the configured limits.
class SizingError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Two computations that must agree did not (oracle residue, route mismatch).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An exact integer result left the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A numerical procedure (quadrature, series) failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace tau3corr
