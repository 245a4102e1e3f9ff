#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phav/measures.hpp"

namespace phav {

enum class SweepFamily { phav, two_phav_fixed_ratio, two_phav_fixed_total };

/// One sweep: a family, the held parameter (ratio R for fixed-ratio sweeps,
/// total mean M_T for fixed-total sweeps, absent for single-component ones),
/// the swept grid, and a detection efficiency folded into every point.
struct SweepSpec {
  SweepFamily family = SweepFamily::phav;
  std::optional<double> fixed_value;
  std::vector<double> grid;
  double efficiency = 1.0;
};

struct SweepRow {
  double swept_value = 0.0;
  double epsilon_a = 0.0;
  double epsilon_b = 0.0;
  std::optional<double> stderr_a;
  std::optional<double> stderr_b;
};

namespace detail {

inline void check_sweep_spec(const SweepSpec& spec) {
  if (spec.grid.empty()) throw std::domain_error("run_sweep: grid must be nonempty");
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    if (!std::isfinite(spec.grid[i])) throw std::domain_error("run_sweep: grid values must be finite");
    if (i > 0 && !(spec.grid[i] > spec.grid[i - 1]))
      throw std::domain_error("run_sweep: grid must be strictly increasing");
  }
  if (!std::isfinite(spec.efficiency) || spec.efficiency < 0.0 || spec.efficiency > 1.0)
    throw std::domain_error("run_sweep: efficiency must lie in [0, 1]");
  switch (spec.family) {
    case SweepFamily::phav:
      if (spec.fixed_value)
        throw std::domain_error("run_sweep: the phav family takes no fixed parameter");
      if (spec.grid.front() < 0.0) throw std::domain_error("run_sweep: means must be nonnegative");
      break;
    case SweepFamily::two_phav_fixed_ratio:
      if (!spec.fixed_value || !std::isfinite(*spec.fixed_value) || !(*spec.fixed_value > 0.0))
        throw std::domain_error("run_sweep: fixed-ratio sweeps need a positive ratio");
      if (spec.grid.front() < 0.0) throw std::domain_error("run_sweep: total means must be nonnegative");
      break;
    case SweepFamily::two_phav_fixed_total:
      if (!spec.fixed_value || !std::isfinite(*spec.fixed_value) || *spec.fixed_value < 0.0)
        throw std::domain_error("run_sweep: fixed-total sweeps need a nonnegative total mean");
      if (!(spec.grid.front() > 0.0) || spec.grid.back() > 1.0)
        throw std::domain_error("run_sweep: balance values must lie in (0, 1]");
      break;
  }
}

}  // namespace detail

/// Detected-photon statistics at one grid point of a sweep. Efficiency acts
/// on the component means directly (exact for these families, no explicit
/// binomial map needed).
inline PhotonDistribution sweep_distribution(const SweepSpec& spec, double swept_value) {
  const double eta = spec.efficiency;
  switch (spec.family) {
    case SweepFamily::phav:
      return poisson_distribution({eta * swept_value});
    case SweepFamily::two_phav_fixed_ratio: {
      double r = *spec.fixed_value;
      if (r < 1.0) r = 1.0 / r;  // ratio of max to min; both conventions accepted
      const double total = eta * swept_value;
      return two_phav_distribution({total * r / (1.0 + r), total / (1.0 + r)});
    }
    case SweepFamily::two_phav_fixed_total:
    default: {
      const double q = swept_value;
      const double total = eta * *spec.fixed_value;
      return two_phav_distribution({total / (1.0 + q), total * q / (1.0 + q)});
    }
  }
}

/// Exact epsilon measures over the grid, one row per point in grid order.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  detail::check_sweep_spec(spec);
  std::vector<SweepRow> rows;
  rows.reserve(spec.grid.size());
  for (double x : spec.grid) {
    const auto [a, b] = epsilon_pair(sweep_distribution(spec, x));
    rows.push_back({x, a.value, b.value, std::nullopt, std::nullopt});
  }
  return rows;
}

/// One curve of the measure-vs-measure simulation: family label, held
/// parameter (absent for the single-component curve) and the sweep rows.
struct Figure4Row {
  std::string family;
  std::optional<double> fixed_param;
  double swept_value = 0.0;
  double epsilon_a = 0.0;
  double epsilon_b = 0.0;
};

namespace detail {

inline std::vector<double> uniform_grid(double start, double stop, double step) {
  const int n = static_cast<int>(std::lround((stop - start) / step));
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = start + i * step;
  return g;
}

}  // namespace detail

/// The seven standard curves of the measure-vs-measure plot: three fixed
/// ratios (min/max 0.2, 0.5, 0.8) swept over total energy, three fixed totals
/// (2, 4, 6) swept over balance up to the flat region near q ~ 0.5, and the
/// single-component curve swept over its mean.
inline std::vector<Figure4Row> figure4_rows() {
  std::vector<Figure4Row> out;
  auto append = [&out](const std::string& family, std::optional<double> fixed, const SweepSpec& spec) {
    for (const SweepRow& r : run_sweep(spec))
      out.push_back({family, fixed, r.swept_value, r.epsilon_a, r.epsilon_b});
  };
  for (double r : {0.2, 0.5, 0.8})
    append("ratio-fixed", r,
           {SweepFamily::two_phav_fixed_ratio, r, detail::uniform_grid(0.1, 6.0, 0.1), 1.0});
  for (double total : {2.0, 4.0, 6.0})
    append("total-fixed", total,
           {SweepFamily::two_phav_fixed_total, total, detail::uniform_grid(0.05, 0.5, 0.05), 1.0});
  append("phav", std::nullopt, {SweepFamily::phav, std::nullopt, detail::uniform_grid(0.05, 6.0, 0.05), 1.0});
  return out;
}

}  // namespace phav
