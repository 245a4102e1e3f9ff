#pragma once

#include <stdexcept>
#include <string>

namespace phav {

inline constexpr const char* kVersion = "1.0.0";

/// Name of the pseudorandom generator used by the sampling module, reported
/// in output metadata for reproducibility.
inline constexpr const char* kRngName = "splitmix64";

/// Thrown when a truncated series exhausts its term budget before meeting
/// its tolerance. Carries the partial sum and the number of terms consumed.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double partial_sum, int terms)
      : std::runtime_error(what), partial_sum_(partial_sum), terms_(terms) {}

  double partial_sum() const noexcept { return partial_sum_; }
  int terms() const noexcept { return terms_; }

 private:
  double partial_sum_;
  int terms_;
};

/// Thrown when an input is structurally unusable, e.g. a histogram with
/// fewer than two occupied bins handed to the bootstrap.
class degenerate_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace phav
