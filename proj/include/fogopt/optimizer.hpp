#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "fogopt/errors.hpp"
#include "fogopt/model.hpp"

namespace fogopt {

namespace detail {

inline void require_open_unit(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw config_error("election probability p must lie in (0, 1)");
}

inline double pow2(double x) { return x * x; }
inline double pow4(double x) { return x * x * x * x; }

}  // namespace detail

/// Closed-form dimensioning objective J_alpha(p) for one network:
/// the expected total distance cost of the device->fog hops plus the
/// fog->cloud hops, as a function of the fog election probability p.
///
///   J1 = pi R (n - np)/(np)        + 0.765 n p a
///   J2 = (n - np) pi^2 R^2/(2(np)^2) + (2/3) n p a^2
///   J4 = pi^4 R^4 n(1-p)/(np)^4    + 0.62 n p a^4
///
/// All three are strictly convex on (0,1).
struct ObjectiveProfile {
  int alpha = 1;
  double a = 0.0;
  double R = 0.0;
  double n = 0.0;

  static ObjectiveProfile from_config(const NetworkConfig& cfg) {
    return {cfg.alpha, cfg.half_side_a, cfg.fog_radius_R,
            static_cast<double>(cfg.total_nodes_n)};
  }

  double value(double p) const {
    detail::require_open_unit(p);
    const double np = n * p;
    switch (alpha) {
      case 1:
        return M_PI * R * (n - np) / np + 0.765 * np * a;
      case 2:
        return (n - np) * detail::pow2(M_PI * R) / (2.0 * detail::pow2(np)) +
               2.0 * np * a * a / 3.0;
      case 4:
        return detail::pow4(M_PI * R) * n * (1.0 - p) / detail::pow4(np) +
               0.62 * np * detail::pow4(a);
      default:
        throw config_error("unsupported path-loss exponent " + std::to_string(alpha));
    }
  }

  double first_derivative(double p) const {
    detail::require_open_unit(p);
    switch (alpha) {
      case 1:
        return (153.0 * a * n * p * p - 200.0 * M_PI * R) / (200.0 * p * p);
      case 2: {
        const double piR2 = detail::pow2(M_PI * R);
        return (4.0 * a * a * n * n * p * p * p + 3.0 * piR2 * p - 6.0 * piR2) /
               (6.0 * n * p * p * p);
      }
      case 4: {
        const double piR4 = detail::pow4(M_PI * R);
        const double p5 = p * p * p * p * p;
        return (31.0 * detail::pow4(a) * detail::pow4(n) * p5 +
                150.0 * piR4 * p - 200.0 * piR4) /
               (50.0 * n * n * n * p5);
      }
      default:
        throw config_error("unsupported path-loss exponent " + std::to_string(alpha));
    }
  }

  double second_derivative(double p) const {
    detail::require_open_unit(p);
    switch (alpha) {
      case 1:
        return 2.0 * M_PI * R / (p * p * p);
      case 2:
        return detail::pow2(M_PI * R) * (3.0 - p) / (n * detail::pow4(p));
      case 4:
        return 4.0 * detail::pow4(M_PI * R) * (5.0 - 3.0 * p) /
               (n * n * n * detail::pow4(p) * p * p);
      default:
        throw config_error("unsupported path-loss exponent " + std::to_string(alpha));
    }
  }
};

inline double objective_value(const ObjectiveProfile& profile, double p) {
  return profile.value(p);
}

/// (first, second) derivative pair, the exact rational closed forms.
inline std::pair<double, double> objective_derivatives(const ObjectiveProfile& profile,
                                                       double p) {
  return {profile.first_derivative(p), profile.second_derivative(p)};
}

/// Closed-form optimum election probability:
///   alpha=1: (200 pi R / (153 a n))^(1/2)      (exact root)
///   alpha=2: (6 pi^2 R^2 / (4 a^2 n^2))^(1/3)
///   alpha=4: (200 pi^4 R^4 / (31 a^4 n^4))^(1/5)
/// The alpha in {2,4} forms drop the linear derivative term, so they are
/// near-roots; both p values are surfaced in OptimizationResult.
/// Throws out_of_model_error when the result leaves (0,1).
inline double analytic_p(int alpha, double a, double R, double n) {
  double p = 0.0;
  switch (alpha) {
    case 1:
      p = std::sqrt(200.0 * M_PI * R / (153.0 * a * n));
      break;
    case 2:
      p = std::cbrt(6.0 * detail::pow2(M_PI * R) / (4.0 * a * a * n * n));
      break;
    case 4:
      p = std::pow(200.0 * detail::pow4(M_PI * R) / (31.0 * detail::pow4(a) * detail::pow4(n)),
                   0.2);
      break;
    default:
      throw config_error("unsupported path-loss exponent " + std::to_string(alpha));
  }
  if (!(p > 0.0 && p < 1.0))
    throw out_of_model_error("closed-form optimum p = " + std::to_string(p) +
                             " falls outside (0,1); configuration is out of model");
  return p;
}

namespace detail {

/// Golden-section refinement on [lo, hi] down to the given bracket width.
template <typename Fn>
double golden_section_min(Fn f, double lo, double hi, double width) {
  constexpr double inv_phi = 0.6180339887498949;  // 1/phi
  double c = hi - (hi - lo) * inv_phi;
  double d = lo + (hi - lo) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > width) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) * inv_phi;
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) * inv_phi;
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Independent numerical minimizer: coarse grid over (0,1) at step 1e-4,
/// then golden-section refinement to bracket width 1e-8. Derivative-free
/// by design so it cross-checks the analytic expressions. The objective is
/// scaled by 1/n before the search (monotone, cannot move the argmin).
/// A minimizer within 1e-4 of either boundary is reported as out of model.
inline double numeric_p(const ObjectiveProfile& profile) {
  constexpr double step = 1e-4;
  const double scale = 1.0 / profile.n;
  auto f = [&](double p) { return profile.value(p) * scale; };

  std::size_t best_k = 1;
  double best_val = f(step);
  for (std::size_t k = 2; k <= 9999; ++k) {
    const double val = f(static_cast<double>(k) * step);
    if (val < best_val) {
      best_val = val;
      best_k = k;
    }
  }
  if (best_k == 1 || best_k == 9999)
    throw out_of_model_error(
        "numerical minimizer sits within 1e-4 of the boundary of (0,1)");

  const double lo = static_cast<double>(best_k - 1) * step;
  const double hi = static_cast<double>(best_k + 1) * step;
  const double p = detail::golden_section_min(f, lo, hi, 1e-8);
  if (p < 1e-4 || p > 1.0 - 1e-4)
    throw out_of_model_error(
        "numerical minimizer sits within 1e-4 of the boundary of (0,1)");
  return p;
}

/// Bundles analytic and numeric optima: counts derive from p_analytic,
/// the objective is evaluated at p_numeric.
inline OptimizationResult optimize(const NetworkConfig& cfg) {
  const auto profile = ObjectiveProfile::from_config(cfg);
  OptimizationResult res;
  res.p_analytic = analytic_p(cfg.alpha, profile.a, profile.R, profile.n);
  res.p_numeric = numeric_p(profile);
  res.fog_count_n1 = profile.n * res.p_analytic;
  res.device_count_n0 = profile.n * (1.0 - res.p_analytic);
  res.devices_per_fog = (1.0 - res.p_analytic) / res.p_analytic;
  res.objective_at_optimum = profile.value(res.p_numeric);
  return res;
}

/// Inverse sizing: given a known fog count n1, recover the election
/// probability and the number of end devices it supports.
///   alpha=1: p = 200 pi R / (153 a n1)
///   alpha=2: p = 6 pi^2 R^2 / (4 a^2 n1^2)
///   alpha=4: p = 200 pi^4 R^4 / (31 a^4 n1^4)
/// then n0 = n1/p - n1.
inline std::pair<double, double> inverse_sizing(int alpha, double a, double R,
                                                double n1_given) {
  if (n1_given <= 0) throw config_error("n1 must be > 0");
  double p = 0.0;
  switch (alpha) {
    case 1:
      p = 200.0 * M_PI * R / (153.0 * a * n1_given);
      break;
    case 2:
      p = 6.0 * detail::pow2(M_PI * R) / (4.0 * a * a * n1_given * n1_given);
      break;
    case 4:
      p = 200.0 * detail::pow4(M_PI * R) /
          (31.0 * detail::pow4(a) * detail::pow4(n1_given));
      break;
    default:
      throw config_error("unsupported path-loss exponent " + std::to_string(alpha));
  }
  if (!(p > 0.0 && p < 1.0))
    throw out_of_model_error("inverse sizing gives p = " + std::to_string(p) +
                             " outside (0,1); configuration is out of model");
  return {p, n1_given / p - n1_given};
}

}  // namespace fogopt
