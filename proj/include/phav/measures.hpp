#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "phav/states.hpp"

namespace phav {

enum class Measure { a, b };

/// One non-Gaussianity value. The thermal reference mean always equals the
/// input distribution's own mean (recomputed, never caller-supplied). The
/// detected flag marks readings taken on detected-photon statistics, where
/// the same formulas give lower bounds to the photon-level values.
struct NonGResult {
  double value = 0.0;
  Measure measure = Measure::a;
  double reference_mean = 0.0;
  std::optional<double> std_err;
  bool clamped = false;   ///< true when a value in [-1e-12, 0) was snapped to 0
  bool detected = false;
};

/// Overlap Tr[rho sigma] = sum_n p_n q_n of two diagonal states; the shorter
/// vector is implicitly zero-padded.
inline double hs_overlap(const PhotonDistribution& p, const PhotonDistribution& q) {
  detail::check_probabilities(p);
  detail::check_probabilities(q);
  const std::size_t n = std::min(p.probs.size(), q.probs.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += p.probs[i] * q.probs[i];
  return sum;
}

namespace detail {

inline DistributionStats measured_stats(const PhotonDistribution& dist, const char* who) {
  const auto stats = distribution_stats(dist);
  double total = 0.0;
  for (double p : dist.probs) total += p;
  if (total <= 0.0) throw std::domain_error(std::string(who) + ": all-zero distribution");
  if (!(stats.mean < 1e6)) throw std::domain_error(std::string(who) + ": mean out of supported range");
  return stats;
}

inline double clamp_measure(double value, bool& clamped, const char* who) {
  clamped = false;
  if (value < 0.0) {
    if (value >= -1e-12) {
      clamped = true;
      return 0.0;
    }
    throw std::runtime_error(std::string(who) + ": measure is negative beyond rounding tolerance");
  }
  return value;
}

}  // namespace detail

/// Hilbert-Schmidt non-Gaussianity
///   delta_a = (mu[p] + mu[tau] - 2 kappa) / (2 mu[p]),
/// with mu[p] = sum p_n^2, mu[tau] = 1/(2N+1) in closed form, and
/// kappa = sum p_n tau_n against the thermal reference of equal mean N.
inline NonGResult delta_a(const PhotonDistribution& dist) {
  const auto stats = detail::measured_stats(dist, "delta_a");
  const double n_ref = stats.mean;
  const double mu_tau = 1.0 / (2.0 * n_ref + 1.0);
  double kappa;
  if (n_ref == 0.0) {
    kappa = dist.probs[0];
  } else {
    const double q = n_ref / (1.0 + n_ref);
    double tau = 1.0 / (1.0 + n_ref);
    kappa = 0.0;
    for (double p : dist.probs) {
      kappa += p * tau;
      tau *= q;
    }
  }
  NonGResult out;
  out.measure = Measure::a;
  out.reference_mean = n_ref;
  out.value = detail::clamp_measure((stats.purity + mu_tau - 2.0 * kappa) / (2.0 * stats.purity),
                                    out.clamped, "delta_a");
  return out;
}

/// Entropic non-Gaussianity
///   delta_b = S(tau) - S(p) = (N+1) ln(N+1) - N ln N - S(p),
/// the thermal reference entropy in closed form minus the state's Shannon
/// entropy. Nonnegative for diagonal states, which the thermal reference
/// majorizes in entropy at fixed mean.
inline NonGResult delta_b(const PhotonDistribution& dist) {
  const auto stats = detail::measured_stats(dist, "delta_b");
  const double n_ref = stats.mean;
  const double s_tau = n_ref > 0.0 ? (n_ref + 1.0) * std::log(n_ref + 1.0) - n_ref * std::log(n_ref) : 0.0;
  NonGResult out;
  out.measure = Measure::b;
  out.reference_mean = n_ref;
  out.value = detail::clamp_measure(s_tau - stats.entropy, out.clamped, "delta_b");
  return out;
}

/// Both measures on a detected-photon distribution, tagged as such. These are
/// the lower bounds epsilon_a, epsilon_b to the photon-level values.
inline std::pair<NonGResult, NonGResult> epsilon_pair(const PhotonDistribution& dist_detected) {
  NonGResult a = delta_a(dist_detected);
  NonGResult b = delta_b(dist_detected);
  a.detected = b.detected = true;
  return {a, b};
}

}  // namespace phav
