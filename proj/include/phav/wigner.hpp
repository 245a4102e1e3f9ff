#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

#include "phav/states.hpp"

namespace phav {

enum class WignerMethod { closed_form, quadrature, parity_reconstruction };

/// One Wigner-function sample. States here are phase-insensitive, so the
/// phase-space point is identified by |alpha| alone. Convention: the function
/// integrates to 1 over the plane and is bounded by 2/pi in magnitude.
struct WignerSample {
  double alpha_mag = 0.0;
  double value = 0.0;
  WignerMethod method = WignerMethod::closed_form;
};

/// Mode-matching overlaps degrading a measured Wigner section: xi for the
/// single-component model, xi_p (probe) and xi_s (internal) for the
/// two-component model. All in [0, 1]; 1 means ideal.
struct OverlapParams {
  double xi = 1.0;
  double xi_p = 1.0;
  double xi_s = 1.0;
};

/// Whether a degraded-model evaluation receives the nominal radial coordinate
/// (the model then looks at sqrt(xi) * r internally) or a coordinate already
/// rescaled by sqrt(xi).
enum class CoordinateConvention { nominal, rescaled };

namespace detail {

inline void require_radius(double r, const char* who) {
  if (!std::isfinite(r) || r < 0.0)
    throw std::domain_error(std::string(who) + ": radius must be finite and nonnegative");
}

inline void require_overlap(double x, const char* who) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0)
    throw std::domain_error(std::string(who) + ": overlap parameters must lie in [0, 1]");
}

inline constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

}  // namespace detail

/// Ideal PHAV Wigner function
///   W(r; N) = (2/pi) I0(4 r b) exp(-2 (r^2 + b^2)),  b = sqrt(N),
/// evaluated overflow-free as (2/pi) i0_scaled(4 r b) exp(-2 (r - b)^2).
inline WignerSample wigner_phav(double alpha_mag, PhavParams params) {
  detail::require_radius(alpha_mag, "wigner_phav");
  detail::require_mean(params.mean, "wigner_phav");
  const double b = std::sqrt(params.mean);
  const double d = alpha_mag - b;
  const double value = detail::kTwoOverPi * bessel_i0_scaled(4.0 * alpha_mag * b) * std::exp(-2.0 * d * d);
  return {alpha_mag, value, WignerMethod::closed_form};
}

/// Same function by direct phase averaging of the displaced Gaussian kernel,
/// (1/2pi) Int (2/pi) e^{-2 |alpha - b e^{i phi}|^2} dphi. Used as an
/// independent cross-check of the closed form and as the CLI quadrature path.
inline WignerSample wigner_phav_by_quadrature(double alpha_mag, PhavParams params, int nodes = 0) {
  detail::require_radius(alpha_mag, "wigner_phav_by_quadrature");
  detail::require_mean(params.mean, "wigner_phav_by_quadrature");
  detail::require_nodes(nodes, "wigner_phav_by_quadrature");
  const double b = std::sqrt(params.mean);
  auto average = [&](int m) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / m;
      const double d2 = alpha_mag * alpha_mag + b * b - 2.0 * alpha_mag * b * std::cos(phi);
      acc += std::exp(-2.0 * d2);
    }
    return detail::kTwoOverPi * acc / m;
  };
  double value;
  if (nodes != 0) {
    value = average(nodes);
  } else {
    value = average(256);
    for (int m = 512; m <= 4096; m *= 2) {
      const double fine = average(m);
      const double diff = std::abs(fine - value);
      value = fine;
      if (diff <= 1e-13) break;
    }
  }
  return {alpha_mag, value, WignerMethod::quadrature};
}

/// Ideal 2-PHAV Wigner function: the PHAV pattern of the first component
/// phase-averaged over the second component's displacement,
///   W2(r) = (1/2pi) Int W_PHAV(|alpha - sqrt(n2) e^{i phi}|; n1) dphi.
/// Depends only on |alpha|. nodes = 0 selects automatic refinement.
inline WignerSample wigner_two_phav(double alpha_mag, TwoPhavParams params, int nodes = 0) {
  detail::require_radius(alpha_mag, "wigner_two_phav");
  detail::require_mean(params.n1, "wigner_two_phav");
  detail::require_mean(params.n2, "wigner_two_phav");
  detail::require_nodes(nodes, "wigner_two_phav");
  const double b2 = std::sqrt(params.n2);
  auto average = [&](int m) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / m;
      const double d2 = std::max(0.0, alpha_mag * alpha_mag + params.n2 - 2.0 * alpha_mag * b2 * std::cos(phi));
      acc += wigner_phav(std::sqrt(d2), {params.n1}).value;
    }
    return acc / m;
  };
  double value;
  if (nodes != 0) {
    value = average(nodes);
  } else {
    value = average(256);
    for (int m = 512; m <= 4096; m *= 2) {
      const double fine = average(m);
      const double diff = std::abs(fine - value);
      value = fine;
      if (diff <= 1e-13) break;
    }
  }
  return {alpha_mag, value, WignerMethod::closed_form};
}

/// Fully integral-based 2-PHAV evaluation: the outer phase average applied to
/// the quadrature PHAV evaluator instead of the closed form.
inline WignerSample wigner_two_phav_by_quadrature(double alpha_mag, TwoPhavParams params, int nodes = 0) {
  detail::require_radius(alpha_mag, "wigner_two_phav_by_quadrature");
  detail::require_mean(params.n1, "wigner_two_phav_by_quadrature");
  detail::require_mean(params.n2, "wigner_two_phav_by_quadrature");
  detail::require_nodes(nodes, "wigner_two_phav_by_quadrature");
  const double b2 = std::sqrt(params.n2);
  const int inner = nodes != 0 ? nodes : 512;
  auto average = [&](int m) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / m;
      const double d2 = std::max(0.0, alpha_mag * alpha_mag + params.n2 - 2.0 * alpha_mag * b2 * std::cos(phi));
      acc += wigner_phav_by_quadrature(std::sqrt(d2), {params.n1}, inner).value;
    }
    return acc / m;
  };
  double value;
  if (nodes != 0) {
    value = average(nodes);
  } else {
    value = average(256);
    for (int m = 512; m <= 2048; m *= 2) {
      const double fine = average(m);
      const double diff = std::abs(fine - value);
      value = fine;
      if (diff <= 1e-12) break;
    }
  }
  return {alpha_mag, value, WignerMethod::quadrature};
}

/// Overlap-degraded single-component model: the ideal pattern of the whole
/// configuration scaled by the overlap (coordinate sqrt(xi) r, mean xi N),
/// damped by exp(-sqrt(1-xi) (r + sqrt(N))) with unscaled amplitudes. Not
/// normalized; it models detection imperfections, not a state.
inline WignerSample wigner_phav_degraded(double alpha_mag, PhavParams params, OverlapParams overlaps,
                                         CoordinateConvention convention = CoordinateConvention::nominal) {
  detail::require_radius(alpha_mag, "wigner_phav_degraded");
  detail::require_mean(params.mean, "wigner_phav_degraded");
  detail::require_overlap(overlaps.xi, "wigner_phav_degraded");
  const double xi = overlaps.xi;
  const double sxi = std::sqrt(xi);
  const double r_nominal = convention == CoordinateConvention::nominal
                               ? alpha_mag
                               : (sxi > 0.0 ? alpha_mag / sxi : alpha_mag);
  const double ideal = wigner_phav(sxi * r_nominal, {xi * params.mean}).value;
  const double damp = std::exp(-std::sqrt(1.0 - xi) * (r_nominal + std::sqrt(params.mean)));
  return {alpha_mag, ideal * damp, WignerMethod::closed_form};
}

/// Overlap-degraded two-component model: configuration scaled by the probe
/// overlap xi_p, damping exp(-[sqrt(1-xi_p) r + sqrt(1-xi_s)(sqrt(n1)+sqrt(n2))])
/// with unscaled amplitudes. Not normalized.
inline WignerSample wigner_two_phav_degraded(double alpha_mag, TwoPhavParams params, OverlapParams overlaps,
                                             int nodes = 0,
                                             CoordinateConvention convention = CoordinateConvention::nominal) {
  detail::require_radius(alpha_mag, "wigner_two_phav_degraded");
  detail::require_mean(params.n1, "wigner_two_phav_degraded");
  detail::require_mean(params.n2, "wigner_two_phav_degraded");
  detail::require_overlap(overlaps.xi_p, "wigner_two_phav_degraded");
  detail::require_overlap(overlaps.xi_s, "wigner_two_phav_degraded");
  const double xi_p = overlaps.xi_p, xi_s = overlaps.xi_s;
  const double sxi = std::sqrt(xi_p);
  const double r_nominal = convention == CoordinateConvention::nominal
                               ? alpha_mag
                               : (sxi > 0.0 ? alpha_mag / sxi : alpha_mag);
  const double ideal = wigner_two_phav(sxi * r_nominal, {xi_p * params.n1, xi_p * params.n2}, nodes).value;
  const double damp = std::exp(-(std::sqrt(1.0 - xi_p) * r_nominal +
                                 std::sqrt(1.0 - xi_s) * (std::sqrt(params.n1) + std::sqrt(params.n2))));
  return {alpha_mag, ideal * damp, WignerMethod::closed_form};
}

/// Parity-sum reconstruction: W(alpha) = (2/pi) sum_m (-1)^m p_m evaluated on
/// the statistics of the state displaced to alpha. Absolute error is bounded
/// by (2/pi) times the distribution's tail bound.
inline double wigner_from_distribution(const PhotonDistribution& dist) {
  detail::check_probabilities(dist);
  if (!(dist.tail_bound <= 1e-10))
    throw std::domain_error("wigner_from_distribution: tail bound too loose for a faithful parity sum");
  double sum = 0.0, sign = 1.0;
  for (double p : dist.probs) {
    sum += sign * p;
    sign = -sign;
  }
  return detail::kTwoOverPi * sum;
}

using WignerState = std::variant<PhavParams, TwoPhavParams>;

/// Wigner values on a uniform radial grid [0, r_max] with `steps` points.
/// For parity reconstruction the displaced statistics are rebuilt per point.
inline std::vector<WignerSample> radial_profile(const WignerState& state, double r_max, int steps,
                                                WignerMethod method) {
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::domain_error("radial_profile: r_max must be positive and finite");
  if (steps < 2) throw std::domain_error("radial_profile: steps must be at least 2");
  std::vector<WignerSample> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double r = r_max * i / (steps - 1);
    WignerSample s;
    if (const auto* ph = std::get_if<PhavParams>(&state)) {
      switch (method) {
        case WignerMethod::closed_form: s = wigner_phav(r, *ph); break;
        case WignerMethod::quadrature: s = wigner_phav_by_quadrature(r, *ph); break;
        case WignerMethod::parity_reconstruction:
          s = {r, wigner_from_distribution(displaced_phav_distribution(*ph, r * r)),
               WignerMethod::parity_reconstruction};
          break;
      }
    } else {
      const auto& tp = std::get<TwoPhavParams>(state);
      switch (method) {
        case WignerMethod::closed_form: s = wigner_two_phav(r, tp); break;
        case WignerMethod::quadrature: s = wigner_two_phav_by_quadrature(r, tp); break;
        case WignerMethod::parity_reconstruction:
          s = {r, wigner_from_distribution(displaced_two_phav_distribution(tp, r * r)),
               WignerMethod::parity_reconstruction};
          break;
      }
    }
    out.push_back(s);
  }
  return out;
}

/// 2 pi Int_0^{r_max} W(r) r dr by composite Simpson rule, refined by node
/// doubling until successive estimates differ by less than 1e-8. Equals 1 for
/// ideal states once r_max covers the support.
template <class WignerFn>
double radial_wigner_integral(WignerFn&& w, double r_max) {
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::domain_error("radial_wigner_integral: r_max must be positive and finite");
  auto simpson = [&](int n) {
    const double h = r_max / n;
    double acc = 0.0;  // integrand r * W(r) vanishes at r = 0
    acc += r_max * w(r_max);
    for (int i = 1; i < n; ++i) {
      const double r = h * i;
      acc += (i % 2 == 1 ? 4.0 : 2.0) * r * w(r);
    }
    return 2.0 * std::numbers::pi * acc * h / 3.0;
  };
  double estimate = simpson(256);
  for (int n = 512; n <= 16384; n *= 2) {
    const double fine = simpson(n);
    const double diff = std::abs(fine - estimate);
    estimate = fine;
    if (diff < 1e-8) break;
  }
  return estimate;
}

}  // namespace phav
