#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "phav/distribution.hpp"

namespace phav {

/// Phase-averaged coherent state: N = |beta|^2. After a loss channel the same
/// family describes detected photons, with mean eta * N.
struct PhavParams {
  double mean = 0.0;
};

/// Interference of two phase-averaged components with mean photon numbers n1
/// and n2. The photon statistics depend on them only through a() and b().
struct TwoPhavParams {
  double n1 = 0.0;
  double n2 = 0.0;

  double a() const { return n1 + n2; }
  double b() const { return 2.0 * std::sqrt(n1 * n2); }
  /// Balancing ratio max/min; +inf when one component vanishes.
  double ratio() const {
    const double lo = std::min(n1, n2), hi = std::max(n1, n2);
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  }
};

struct BeamSplitterSpec {
  double transmissivity = 0.5;
};

enum class Port { transmitted, reflected };

namespace detail {

inline void require_mean(double m, const char* who) {
  if (!std::isfinite(m) || m < 0.0)
    throw std::domain_error(std::string(who) + ": mean photon number must be finite and nonnegative");
}

inline void require_nodes(int nodes, const char* who) {
  if (nodes != 0 && nodes < 64)
    throw std::domain_error(std::string(who) + ": node count must be 0 (automatic) or >= 64");
}

/// ln Gamma(n+1) for n = 0..n_max.
inline std::vector<double> log_factorials(int n_max) {
  std::vector<double> lg(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) lg[static_cast<std::size_t>(n)] = std::lgamma(n + 1.0);
  return lg;
}

/// Poisson(lambda) entries for n = 0..n_max, as exp(n ln lambda - lambda - ln n!).
inline void poisson_entries(double lambda, const std::vector<double>& lg, std::vector<double>& out) {
  const int n_max = static_cast<int>(lg.size()) - 1;
  out.assign(lg.size(), 0.0);
  if (lambda <= 0.0) {
    out[0] = 1.0;
    return;
  }
  const double ln_lambda = std::log(lambda);
  for (int n = 0; n <= n_max; ++n)
    out[static_cast<std::size_t>(n)] = std::exp(n * ln_lambda - lambda - lg[static_cast<std::size_t>(n)]);
}

/// Beyond this total the alternating binomial sum behind the closed form
/// loses too many digits to cancellation; the phase-average quadrature is
/// used instead (same state, stable at any size).
inline constexpr double kClosedFormLimit = 40.0;

/// T_k(B) = (1/2pi) Int_0^{2pi} e^{-B cos phi} cos^k phi dphi for k = 0..k_max,
/// expressed through 1F2 evaluations; T_0(B) = I0(B).
inline std::vector<double> cosine_moment_table(double big_b, int k_max, SeriesControl ctl) {
  std::vector<double> t(static_cast<std::size_t>(k_max) + 1);
  const double z = 0.25 * big_b * big_b;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (int k = 0; k <= k_max; ++k) {
    try {
      if (k % 2 == 0) {
        const double g = std::exp(log_gamma((k + 1) / 2.0) - log_gamma(k / 2.0 + 1.0)) / sqrt_pi;
        t[static_cast<std::size_t>(k)] = g * hyp1f2((k + 1) / 2.0, 0.5, k / 2.0 + 1.0, z, ctl);
      } else {
        const double g = std::exp(log_gamma(k / 2.0 + 1.0) - log_gamma((k + 3) / 2.0));
        t[static_cast<std::size_t>(k)] = -(big_b / sqrt_pi) * g * hyp1f2(k / 2.0 + 1.0, 1.5, (k + 3) / 2.0, z, ctl);
      }
    } catch (const convergence_error& e) {
      throw convergence_error("two_phav_distribution: cosine moment series failed at k=" + std::to_string(k),
                              e.partial_sum(), e.terms());
    }
  }
  return t;
}

}  // namespace detail

/// Poissonian photon statistics of a single phase-averaged coherent state,
/// p_n = e^{-N} N^n / n!.
inline PhotonDistribution poisson_distribution(PhavParams params, CutoffPolicy policy = {}) {
  detail::require_mean(params.mean, "poisson_distribution");
  if (params.mean == 0.0 && policy.mode == CutoffPolicy::Mode::automatic) return {{1.0}, 0.0};
  const auto [n_max, bound] = detail::resolve_poisson_cutoff(params.mean, policy);
  const auto lg = detail::log_factorials(n_max);
  PhotonDistribution out;
  out.tail_bound = bound;
  detail::poisson_entries(params.mean, lg, out.probs);
  return out;
}

/// Thermal (geometric) photon statistics tau_n = N^n / (1+N)^{n+1}.
///
/// The geometric tail is far heavier than a Poissonian one, so the automatic
/// cutoff here uses the exact tail (N/(1+N))^{n_max+1} with a tight default
/// target; the Poisson envelope rule would certify far too little.
inline PhotonDistribution thermal_distribution(double mean, CutoffPolicy policy = CutoffPolicy::automatic(1e-16)) {
  detail::require_mean(mean, "thermal_distribution");
  if (mean == 0.0 && policy.mode == CutoffPolicy::Mode::automatic) return {{1.0}, 0.0};
  const double q = mean / (1.0 + mean);
  int n_max;
  if (policy.mode == CutoffPolicy::Mode::fixed) {
    n_max = policy.fixed_n_max;
  } else {
    n_max = std::max(32, static_cast<int>(std::ceil(std::log(policy.tail_target) / std::log(q))) - 1);
    n_max = std::min(n_max, detail::kMaxAutoCutoff);
  }
  PhotonDistribution out;
  out.tail_bound = std::exp((n_max + 1.0) * std::log(q));
  out.probs.resize(static_cast<std::size_t>(n_max) + 1);
  double t = 1.0 / (1.0 + mean);
  for (int n = 0; n <= n_max; ++n, t *= q) out.probs[static_cast<std::size_t>(n)] = t;
  return out;
}

/// Phase-average definition of the 2-PHAV statistics,
/// p_n = (1/2pi) Int_0^{2pi} Poisson_n(A + B cos phi) dphi,
/// by periodic trapezoid quadrature. nodes = 0 selects the automatic policy
/// (256 nodes, doubled until entries move by <= 1e-12, capped at 4096);
/// explicit node counts (>= 64) are used verbatim. Spectrally convergent.
inline PhotonDistribution two_phav_by_quadrature(TwoPhavParams params, CutoffPolicy policy = {}, int nodes = 0) {
  detail::require_mean(params.n1, "two_phav_by_quadrature");
  detail::require_mean(params.n2, "two_phav_by_quadrature");
  detail::require_nodes(nodes, "two_phav_by_quadrature");
  const double a = params.a(), b = params.b();
  if (a == 0.0 && policy.mode == CutoffPolicy::Mode::automatic) return {{1.0}, 0.0};
  const auto [n_max, bound] = detail::resolve_poisson_cutoff(a + b, policy);
  const auto lg = detail::log_factorials(n_max);

  std::vector<double> entry;
  if (b == 0.0) {
    // Constant integrand: the average is a single evaluation, exactly.
    detail::poisson_entries(a, lg, entry);
    return {std::move(entry), bound};
  }

  auto average = [&](int m) {
    std::vector<double> acc(lg.size(), 0.0);
    std::vector<double> node(lg.size());
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / m;
      const double lambda = std::max(0.0, a + b * std::cos(phi));
      detail::poisson_entries(lambda, lg, node);
      for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += node[n];
    }
    for (double& v : acc) v /= m;
    return acc;
  };

  if (nodes != 0) return {average(nodes), bound};
  std::vector<double> coarse = average(256);
  for (int m = 512; m <= 4096; m *= 2) {
    std::vector<double> fine = average(m);
    double worst = 0.0;
    for (std::size_t n = 0; n < fine.size(); ++n) worst = std::max(worst, std::abs(fine[n] - coarse[n]));
    coarse = std::move(fine);
    if (worst <= 1e-12) break;
  }
  return {std::move(coarse), bound};
}

/// Closed-form 2-PHAV statistics: with A = n1 + n2 and B = 2 sqrt(n1 n2),
/// p_n = (e^{-A} A^n / n!) sum_k C(n,k) (B/A)^k T_k(B), binomials in log
/// space and T_k from cosine_moment_table. Falls back to the phase-average
/// quadrature for large totals, where the alternating sum cancels badly.
inline PhotonDistribution two_phav_distribution(TwoPhavParams params, CutoffPolicy policy = {}) {
  detail::require_mean(params.n1, "two_phav_distribution");
  detail::require_mean(params.n2, "two_phav_distribution");
  const double a = params.a(), b = params.b();
  if (b == 0.0) return poisson_distribution({a}, policy);
  if (a + b > detail::kClosedFormLimit) return two_phav_by_quadrature(params, policy, 0);

  const auto [n_max, bound] = detail::resolve_poisson_cutoff(a + b, policy);
  const auto lg = detail::log_factorials(n_max);
  const auto t = detail::cosine_moment_table(b, n_max, {});
  const double ln_a = std::log(a);
  const double ln_ratio = std::log(b / a);  // b <= a always, so ratio <= 1

  PhotonDistribution out;
  out.tail_bound = bound;
  out.probs.resize(lg.size());
  for (int n = 0; n <= n_max; ++n) {
    const double lg_n = lg[static_cast<std::size_t>(n)];
    double sum = 0.0, comp = 0.0;  // Kahan compensation
    for (int k = 0; k <= n; ++k) {
      const double w = std::exp(lg_n - lg[static_cast<std::size_t>(k)] - lg[static_cast<std::size_t>(n - k)] +
                                k * ln_ratio);
      const double y = w * t[static_cast<std::size_t>(k)] - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    }
    const double prefactor = std::exp(n * ln_a - a - lg_n);
    out.probs[static_cast<std::size_t>(n)] = std::max(0.0, prefactor * sum);
  }
  return out;
}

/// Binomial detection map: p^det_m = sum_{n>=m} C(n,m) eta^m (1-eta)^{n-m} p_n.
/// The input's truncated mass lands somewhere among the detected counts, so
/// the tail bound carries over unchanged.
inline PhotonDistribution apply_loss(const PhotonDistribution& dist, double efficiency) {
  detail::check_probabilities(dist);
  if (!std::isfinite(efficiency) || efficiency < 0.0 || efficiency > 1.0)
    throw std::domain_error("apply_loss: efficiency must lie in [0, 1]");
  if (efficiency == 1.0) return dist;
  if (efficiency == 0.0) {
    double total = 0.0;
    for (double p : dist.probs) total += p;
    return {{total}, dist.tail_bound};
  }
  const int n_max = dist.n_max();
  const auto lg = detail::log_factorials(n_max);
  const double ln_eta = std::log(efficiency);
  const double ln_miss = std::log1p(-efficiency);
  PhotonDistribution out;
  out.tail_bound = dist.tail_bound;
  out.probs.assign(dist.probs.size(), 0.0);
  for (int n = 0; n <= n_max; ++n) {
    const double pn = dist.probs[static_cast<std::size_t>(n)];
    if (pn == 0.0) continue;
    const double lg_n = lg[static_cast<std::size_t>(n)];
    for (int m = 0; m <= n; ++m) {
      const double w = std::exp(lg_n - lg[static_cast<std::size_t>(m)] - lg[static_cast<std::size_t>(n - m)] +
                                m * ln_eta + (n - m) * ln_miss);
      out.probs[static_cast<std::size_t>(m)] += pn * w;
    }
  }
  return out;
}

/// Component means at one output port of a beam splitter fed with two
/// phase-averaged inputs of means beta_sq and beta_tilde_sq.
inline TwoPhavParams bs_output_params(double beta_sq, double beta_tilde_sq, BeamSplitterSpec bs, Port port) {
  detail::require_mean(beta_sq, "bs_output_params");
  detail::require_mean(beta_tilde_sq, "bs_output_params");
  if (!std::isfinite(bs.transmissivity) || bs.transmissivity < 0.0 || bs.transmissivity > 1.0)
    throw std::domain_error("bs_output_params: transmissivity must lie in [0, 1]");
  const double t = bs.transmissivity;
  if (port == Port::transmitted) return {t * beta_sq, (1.0 - t) * beta_tilde_sq};
  return {(1.0 - t) * beta_sq, t * beta_tilde_sq};
}

/// Statistics of a PHAV displaced by a probe of mean |alpha|^2 = probe_mean.
/// The relative phase is uniform, so this is exactly a two-component state.
inline PhotonDistribution displaced_phav_distribution(PhavParams state, double probe_mean,
                                                      CutoffPolicy policy = {}) {
  detail::require_mean(probe_mean, "displaced_phav_distribution");
  return two_phav_distribution({state.mean, probe_mean}, policy);
}

/// Statistics of a 2-PHAV displaced by a probe: the double phase average
/// reduces to one quadrature over the second component's phase,
/// p_m = (1/2pi) Int [two_phav(n1, probe + n2 - 2 sqrt(probe n2) cos phi)]_m dphi.
inline PhotonDistribution displaced_two_phav_distribution(TwoPhavParams state, double probe_mean,
                                                          CutoffPolicy policy = {}, int nodes = 0) {
  detail::require_mean(state.n1, "displaced_two_phav_distribution");
  detail::require_mean(state.n2, "displaced_two_phav_distribution");
  detail::require_mean(probe_mean, "displaced_two_phav_distribution");
  detail::require_nodes(nodes, "displaced_two_phav_distribution");
  if (probe_mean == 0.0) return two_phav_distribution(state, policy);
  if (state.n2 == 0.0) return displaced_phav_distribution({state.n1}, probe_mean, policy);

  const double amp = std::sqrt(state.n1) + std::sqrt(state.n2) + std::sqrt(probe_mean);
  const auto [n_max, bound] = detail::resolve_poisson_cutoff(amp * amp, policy);
  const double cross = 2.0 * std::sqrt(probe_mean * state.n2);

  auto average = [&](int m) {
    std::vector<double> acc(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / m;
      const double second = std::max(0.0, probe_mean + state.n2 - cross * std::cos(phi));
      const auto inner = two_phav_distribution({state.n1, second}, CutoffPolicy::fixed_at(n_max));
      for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += inner.probs[n];
    }
    for (double& v : acc) v /= m;
    return acc;
  };

  if (nodes != 0) return {average(nodes), bound};
  std::vector<double> coarse = average(256);
  for (int m = 512; m <= 4096; m *= 2) {
    std::vector<double> fine = average(m);
    double worst = 0.0;
    for (std::size_t n = 0; n < fine.size(); ++n) worst = std::max(worst, std::abs(fine[n] - coarse[n]));
    coarse = std::move(fine);
    if (worst <= 1e-12) break;
  }
  return {std::move(coarse), bound};
}

}  // namespace phav
