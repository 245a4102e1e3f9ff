#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "phav/specfun.hpp"

namespace phav {

/// Photon-number probabilities p_0..p_{n_max} together with a certified upper
/// bound on the probability mass beyond n_max. Immutable by convention once
/// constructed.
struct PhotonDistribution {
  std::vector<double> probs;
  double tail_bound = 0.0;

  int n_max() const { return static_cast<int>(probs.size()) - 1; }
};

struct DistributionStats {
  double mean;
  double purity;
  double entropy;  ///< Shannon entropy in nats; equals von Neumann for diagonal states
};

/// Truncation policy for distribution constructors.
struct CutoffPolicy {
  enum class Mode { automatic, fixed };
  Mode mode = Mode::automatic;
  int fixed_n_max = 0;
  double tail_target = 1e-12;

  static CutoffPolicy automatic(double tail_target = 1e-12) {
    if (!(tail_target > 0.0))
      throw std::domain_error("CutoffPolicy: tail_target must be positive");
    return {Mode::automatic, 0, tail_target};
  }
  static CutoffPolicy fixed_at(int n_max) {
    if (n_max < 0) throw std::domain_error("CutoffPolicy: fixed n_max must be nonnegative");
    return {Mode::fixed, n_max, 1e-12};
  }
};

/// Upper bound on the Poisson(lambda) mass beyond m, via the geometric bound
/// on the term ratio. Returns 1 when m is too small for the bound to apply.
inline double poisson_tail_bound(double lambda, int m) {
  if (lambda <= 0.0) return 0.0;
  const double r = lambda / (m + 2.0);
  if (r >= 1.0) return 1.0;
  const double lead = std::exp((m + 1.0) * std::log(lambda) - lambda - log_gamma(m + 2.0));
  return lead / (1.0 - r);
}

namespace detail {

inline constexpr int kMaxAutoCutoff = 2'000'000;

/// Resolve (n_max, certified tail bound) for a family whose entries are
/// dominated by Poisson(lambda_env).
inline std::pair<int, double> resolve_poisson_cutoff(double lambda_env, const CutoffPolicy& policy) {
  if (policy.mode == CutoffPolicy::Mode::fixed)
    return {policy.fixed_n_max, poisson_tail_bound(lambda_env, policy.fixed_n_max)};
  int m = static_cast<int>(std::ceil(lambda_env + 12.0 * std::sqrt(lambda_env + 1.0) + 30.0));
  double bound = poisson_tail_bound(lambda_env, m);
  while (bound > policy.tail_target && m < kMaxAutoCutoff) {
    m += 16;
    bound = poisson_tail_bound(lambda_env, m);
  }
  return {m, bound};
}

inline void check_probabilities(const PhotonDistribution& d) {
  if (d.probs.empty())
    throw std::domain_error("PhotonDistribution: empty probability vector");
  for (double p : d.probs)
    if (!(p >= 0.0) || !std::isfinite(p))
      throw std::domain_error("PhotonDistribution: entries must be finite and nonnegative");
}

}  // namespace detail

/// Mean, purity and Shannon entropy (nats) of a photon-number distribution.
/// Terms with p_n = 0 contribute exactly zero to the entropy.
inline DistributionStats distribution_stats(const PhotonDistribution& dist) {
  detail::check_probabilities(dist);
  double mean = 0.0, purity = 0.0, entropy = 0.0;
  for (std::size_t n = 0; n < dist.probs.size(); ++n) {
    const double p = dist.probs[n];
    mean += static_cast<double>(n) * p;
    purity += p * p;
    if (p > 0.0) entropy -= p * std::log(p);
  }
  return {mean, purity, entropy};
}

}  // namespace phav
