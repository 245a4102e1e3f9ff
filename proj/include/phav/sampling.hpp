#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "phav/measures.hpp"

namespace phav {

struct RngSeed {
  std::uint64_t seed = 0;
};

/// Shot counts per photon number; sum(counts) == shots.
struct CountHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
};

/// splitmix64 (Steele, Lea, Flood 2014). Counter-based, full 64-bit output,
/// passes BigCrush; one invertible permutation of an additive counter, so
/// distinct seeds give independent streams. Satisfies
/// std::uniform_random_bit_generator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  explicit SplitMix64(RngSeed seed) : state_(seed.seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(SplitMix64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

namespace detail {

inline void check_histogram(const CountHistogram& hist, const char* who) {
  if (hist.counts.empty() || hist.shots == 0)
    throw std::domain_error(std::string(who) + ": histogram must have at least one bin and one shot");
  std::uint64_t total = 0;
  for (std::uint64_t c : hist.counts) total += c;
  if (total != hist.shots)
    throw std::domain_error(std::string(who) + ": counts do not sum to shots");
}

}  // namespace detail

/// shots i.i.d. draws from the truncated distribution by inverse-CDF lookup.
/// Deterministic given the seed; the same triple always yields the same
/// histogram. counts has one bin per distribution entry.
inline CountHistogram sample_counts(const PhotonDistribution& dist, std::uint64_t shots, RngSeed seed) {
  detail::check_probabilities(dist);
  if (shots == 0) throw std::domain_error("sample_counts: shots must be at least 1");
  std::vector<double> cdf(dist.probs.size());
  double run = 0.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    run += dist.probs[i];
    cdf[i] = run;
  }
  const double total = cdf.back();
  if (!(total > 0.0)) throw std::domain_error("sample_counts: distribution has zero total mass");

  CountHistogram hist;
  hist.counts.assign(dist.probs.size(), 0);
  hist.shots = shots;
  SplitMix64 gen(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(gen) * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    ++hist.counts[idx];
  }
  return hist;
}

/// Relative frequencies counts/shots; normalization is exact by construction,
/// so the tail bound is 0.
inline PhotonDistribution empirical_distribution(const CountHistogram& hist) {
  detail::check_histogram(hist, "empirical_distribution");
  PhotonDistribution out;
  out.tail_bound = 0.0;
  out.probs.resize(hist.counts.size());
  const double inv = 1.0 / static_cast<double>(hist.shots);
  for (std::size_t i = 0; i < hist.counts.size(); ++i)
    out.probs[i] = static_cast<double>(hist.counts[i]) * inv;
  return out;
}

namespace detail {

/// One multinomial resample of the histogram, via the conditional-binomial
/// chain: bin i gets Binomial(remaining, c_i / mass_left) counts. Masses are
/// tracked as integer counts, so the final occupied bin sees a conditional
/// probability of exactly 1 and absorbs every remaining shot.
inline CountHistogram multinomial_resample(const CountHistogram& hist, SplitMix64& gen) {
  CountHistogram out;
  out.counts.assign(hist.counts.size(), 0);
  out.shots = hist.shots;
  std::size_t last = 0;
  for (std::size_t i = 0; i < hist.counts.size(); ++i)
    if (hist.counts[i] > 0) last = i;
  std::uint64_t remaining = hist.shots;
  std::uint64_t mass_left = hist.shots;
  for (std::size_t i = 0; i < last && remaining > 0; ++i) {
    const std::uint64_t c = hist.counts[i];
    if (c == 0) continue;
    const double cond = static_cast<double>(c) / static_cast<double>(mass_left);
    std::binomial_distribution<std::uint64_t> bin(remaining, std::min(cond, 1.0));
    const std::uint64_t k = bin(gen);
    out.counts[i] = k;
    remaining -= k;
    mass_left -= c;
  }
  out.counts[last] += remaining;
  return out;
}

}  // namespace detail

/// Bootstrap error bars for the epsilon measures: the point estimates come
/// from the histogram itself, the standard errors from the spread across
/// multinomial resamples. Each resample runs on its own derived seed (one
/// splitmix64 output per resample), so they stay independent and the loop
/// may be parallelized without changing results.
inline std::pair<NonGResult, NonGResult> bootstrap_epsilon(const CountHistogram& hist, int resamples,
                                                           RngSeed seed) {
  detail::check_histogram(hist, "bootstrap_epsilon");
  if (resamples < 100) throw std::domain_error("bootstrap_epsilon: at least 100 resamples required");
  int occupied = 0;
  for (std::uint64_t c : hist.counts)
    if (c > 0) ++occupied;
  if (occupied < 2)
    throw degenerate_input("bootstrap_epsilon: histogram occupies fewer than 2 bins");

  auto [point_a, point_b] = epsilon_pair(empirical_distribution(hist));

  std::vector<std::uint64_t> stream_seeds(static_cast<std::size_t>(resamples));
  SplitMix64 seeder(seed);
  for (auto& s : stream_seeds) s = seeder();

  std::vector<double> vals_a, vals_b;
  vals_a.reserve(stream_seeds.size());
  vals_b.reserve(stream_seeds.size());
  for (std::uint64_t s : stream_seeds) {
    SplitMix64 gen(s);
    const auto resample = detail::multinomial_resample(hist, gen);
    const auto [a, b] = epsilon_pair(empirical_distribution(resample));
    vals_a.push_back(a.value);
    vals_b.push_back(b.value);
  }

  auto sample_stddev = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
  };
  point_a.std_err = sample_stddev(vals_a);
  point_b.std_err = sample_stddev(vals_b);
  return {point_a, point_b};
}

}  // namespace phav
