#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fogopt/errors.hpp"
#include "fogopt/format.hpp"
#include "fogopt/model.hpp"
#include "fogopt/rng.hpp"

namespace fogopt {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point& p, const Point& q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

/// One binomial-point-process draw: n uniform nodes on [-a,a]^2, a fixed
/// number of them elected as fog nodes, devices assigned to the nearest fog.
struct Placement {
  std::vector<Point> coords;
  std::vector<std::size_t> fog_indices;        // sorted, strict subset
  std::map<std::size_t, std::size_t> assignment;  // device index -> fog index
  std::uint64_t seed = 0;
  double half_side_a = 0.0;

  bool is_fog(std::size_t i) const {
    return std::binary_search(fog_indices.begin(), fog_indices.end(), i);
  }
};

/// Samples a placement. Deterministic in (cfg, n1, seed): coordinates are
/// drawn first (x then y per node), then a partial Fisher-Yates shuffle
/// elects exactly n1 fog nodes. Nearest-fog ties break to the lowest
/// fog index.
inline Placement sample_placement(const NetworkConfig& cfg, std::int64_t n1,
                                  std::uint64_t seed) {
  const std::int64_t n = cfg.total_nodes_n;
  if (n1 < 1 || n1 > n - 1)
    throw config_error("fog count n1 must satisfy 1 <= n1 <= n-1, got " +
                       std::to_string(n1));

  Placement pl;
  pl.seed = seed;
  pl.half_side_a = cfg.half_side_a;
  Rng rng(seed);

  const double a = cfg.half_side_a;
  pl.coords.resize(static_cast<std::size_t>(n));
  for (auto& pt : pl.coords) {
    pt.x = rng.uniform(-a, a);
    pt.y = rng.uniform(-a, a);
  }

  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t k = 0; k < static_cast<std::size_t>(n1); ++k) {
    const auto j = k + rng.uniform_index(static_cast<std::uint64_t>(n) - k);
    std::swap(idx[k], idx[j]);
  }
  pl.fog_indices.assign(idx.begin(), idx.begin() + static_cast<std::size_t>(n1));
  std::sort(pl.fog_indices.begin(), pl.fog_indices.end());

  for (std::size_t d = 0; d < pl.coords.size(); ++d) {
    if (pl.is_fog(d)) continue;
    std::size_t best = pl.fog_indices.front();
    double best_dist = distance(pl.coords[d], pl.coords[best]);
    for (const auto f : pl.fog_indices) {
      const double dist = distance(pl.coords[d], pl.coords[f]);
      if (dist < best_dist) {
        best_dist = dist;
        best = f;
      }
    }
    pl.assignment.emplace(d, best);
  }
  return pl;
}

/// E[||(U,V)||^alpha] for U,V ~ Unif(-a,a): the expected alpha-th power of
/// the node-to-cloud distance. 0.765a for alpha=1; (2/3)a^2 for alpha=2;
/// (28/45)a^4 = 0.6222a^4 for alpha=4 (exact integral; 0.62 rounded
/// elsewhere in the objective chain).
inline double center_distance_moment(int alpha, double a) {
  if (a <= 0) throw config_error("half side a must be > 0");
  switch (alpha) {
    case 1: return 0.765 * a;
    case 2: return (2.0 / 3.0) * a * a;
    case 4: return (28.0 / 45.0) * a * a * a * a;
    default: throw config_error("unsupported path-loss exponent " + std::to_string(alpha));
  }
}

/// Per-fog coverage radius r = pi*R/n1 from partitioning the circular fog
/// network circumference. Evaluated as written; n1 < pi gives r > R.
inline double fog_range(double R, double n1) {
  if (R <= 0 || n1 <= 0) throw config_error("fog_range requires R > 0 and n1 > 0");
  return M_PI * R / n1;
}

/// i-th ordered distance moment for a BPP in a ball of radius r holding
/// N_per_fog points: E[x_i] = r sqrt(i/(N+1)), E[x_i^2] = r^2 i/(N+1),
/// E[x_i^4] = r^4 i^2/(N+1)^2.
inline double bpp_distance_moment(int order, double r, std::int64_t i,
                                  double N_per_fog) {
  if (r <= 0 || i < 1 || N_per_fog <= 0)
    throw config_error("bpp_distance_moment requires r > 0, i >= 1, N > 0");
  const double ratio = static_cast<double>(i) / (N_per_fog + 1.0);
  switch (order) {
    case 1: return r * std::sqrt(ratio);
    case 2: return r * r * ratio;
    case 4: return r * r * r * r * ratio * ratio;
    default: throw config_error("unsupported moment order " + std::to_string(order));
  }
}

/// Monte Carlo oracle for center_distance_moment: the sample mean of
/// ||(U,V)||^alpha over `samples` draws.
inline double empirical_moment(int alpha, double a, std::int64_t samples,
                               std::uint64_t seed) {
  if (samples < 1) throw config_error("samples must be >= 1");
  Rng rng(seed);
  double acc = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const double u = rng.uniform(-a, a);
    const double v = rng.uniform(-a, a);
    const double d2 = u * u + v * v;
    switch (alpha) {
      case 1: acc += std::sqrt(d2); break;
      case 2: acc += d2; break;
      case 4: acc += d2 * d2; break;
      default: throw config_error("unsupported path-loss exponent " + std::to_string(alpha));
    }
  }
  return acc / static_cast<double>(samples);
}

inline nlohmann::json placement_to_json(const Placement& pl) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& pt : pl.coords) coords.push_back({pt.x, pt.y});
  nlohmann::json assignment = nlohmann::json::object();
  for (const auto& [dev, fog] : pl.assignment)
    assignment[std::to_string(dev)] = fog;
  return nlohmann::json{{"seed", pl.seed},
                        {"a", pl.half_side_a},
                        {"coords", coords},
                        {"fog_indices", pl.fog_indices},
                        {"assignment", assignment}};
}

/// CSV columns: index, x_km, y_km, role, assigned_fog (blank for fog rows).
inline void placement_to_csv(const Placement& pl, std::ostream& os) {
  os << "index,x_km,y_km,role,assigned_fog\n";
  for (std::size_t i = 0; i < pl.coords.size(); ++i) {
    const bool fog = pl.is_fog(i);
    os << i << ',' << fmt_full(pl.coords[i].x) << ',' << fmt_full(pl.coords[i].y)
       << ',' << (fog ? "fog" : "device") << ',';
    if (!fog) os << pl.assignment.at(i);
    os << '\n';
  }
}

}  // namespace fogopt
