#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "phav/common.hpp"

namespace phav {

/// Termination and budget control for truncated series summation.
struct SeriesControl {
  double rel_tol = 1e-14;  ///< termwise relative tolerance, in (0, 1e-6]
  int max_terms = 500;     ///< at least 50
};

namespace detail {
inline void check_series_control(const SeriesControl& ctl) {
  if (!(ctl.rel_tol > 0.0 && ctl.rel_tol <= 1e-6) || ctl.max_terms < 50)
    throw std::domain_error("SeriesControl: rel_tol must lie in (0, 1e-6] and max_terms be >= 50");
}
}  // namespace detail

/// ln Gamma(x) for finite x > 0.
inline double log_gamma(double x) {
  if (!std::isfinite(x) || !(x > 0.0))
    throw std::domain_error("log_gamma: argument must be finite and positive");
  return std::lgamma(x);
}

/// I0(x) * exp(-x), the scaled modified Bessel function of order zero.
///
/// Power series below x = 20, asymptotic expansion above. Exposed only in
/// scaled form so that callers combine exponents in log space; the bare I0
/// overflows already for moderate arguments.
inline double bessel_i0_scaled(double x) {
  if (!std::isfinite(x) || !(x >= 0.0))
    throw std::domain_error("bessel_i0_scaled: argument must be finite and nonnegative");
  if (x <= 20.0) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return sum * std::exp(-x);
  }
  // I0(x) ~ e^x / sqrt(2 pi x) * sum_m u_m / x^m with u_m = ((2m-1)!!)^2 / (m! 8^m).
  // Terms shrink until m ~ 2x; stop at the smallest one.
  double term = 1.0, sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int m = 1; m < 60; ++m) {
    const double odd = 2.0 * m - 1.0;
    term *= odd * odd / (8.0 * m * x);
    if (term >= prev) break;
    sum += term;
    prev = term;
    if (term < sum * 1e-17) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

/// Generalized hypergeometric 1F2(a; b1, b2; z) by direct term recurrence.
///
/// Summation stops once the term-to-sum ratio stays below ctl.rel_tol for two
/// consecutive terms, so transiently vanishing terms do not end it early.
/// Throws convergence_error (carrying the partial sum and term count) if the
/// budget runs out first.
inline double hyp1f2(double a, double b1, double b2, double z, SeriesControl ctl = {}) {
  detail::check_series_control(ctl);
  if (!std::isfinite(a) || !std::isfinite(b1) || !std::isfinite(b2) || !std::isfinite(z))
    throw std::domain_error("hyp1f2: arguments must be finite");
  auto nonpositive_integer = [](double b) { return b <= 0.0 && b == std::floor(b); };
  if (nonpositive_integer(b1) || nonpositive_integer(b2))
    throw std::domain_error("hyp1f2: lower parameters must not be nonpositive integers");
  if (z == 0.0) return 1.0;

  double term = 1.0, sum = 1.0;
  int quiet = 0;
  for (int k = 0; k < ctl.max_terms; ++k) {
    term *= (a + k) * z / ((b1 + k) * (b2 + k) * (k + 1.0));
    sum += term;
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum)) {
      if (++quiet >= 2) return sum;
    } else {
      quiet = 0;
    }
  }
  throw convergence_error("hyp1f2: series did not converge within max_terms", sum, ctl.max_terms);
}

}  // namespace phav
