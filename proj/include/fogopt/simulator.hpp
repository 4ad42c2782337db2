#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fogopt/errors.hpp"
#include "fogopt/format.hpp"
#include "fogopt/geometry.hpp"
#include "fogopt/model.hpp"
#include "fogopt/optimizer.hpp"
#include "fogopt/rng.hpp"

namespace fogopt {

/// Channel power coefficient model for the experiments. The unit model is
/// deterministic h = 1/E[1/h]; Nakagami-m (m=2) power fading is available
/// for sensitivity runs and has finite E[1/h], unlike Rayleigh.
enum class ChannelModel { unit, nakagami_m2 };

inline double draw_channel(ChannelModel model, double inv_mean_c, Rng& rng) {
  switch (model) {
    case ChannelModel::unit:
      return 1.0 / inv_mean_c;
    case ChannelModel::nakagami_m2: {
      // Gamma(shape 2, scale 1/2): mean 1, E[1/h] = 2.
      const double u1 = rng.u01();
      const double u2 = rng.u01();
      return -0.5 * (std::log(1.0 - u1) + std::log(1.0 - u2));
    }
  }
  throw simulation_error("unknown channel model");
}

/// One channel power coefficient per device link and per fog link, in
/// ascending node-index order.
struct ChannelDraws {
  std::vector<double> h_device;
  std::vector<double> h_fog;
};

/// Per-link SINRs, rates and the two-hop transmission delay of every
/// device, computed on a concrete placement:
///   SINR_fog(i)   = P_i h_i x_i^-alpha / (sigma^2 + I_fog)
///   SINR_cloud(j) = P_j h_j y_j^-alpha / (sigma^2 + I_cloud)
///   rate          = W log2(1 + SINR)
///   trans_delay_i = M/rate_fog(i) + (M-K)/rate_cloud(fog(i)) + fixed_delays
struct LinkBudget {
  std::vector<std::size_t> device_indices;  // ascending
  std::vector<std::size_t> fog_indices;     // ascending
  std::vector<double> sinr_fog;             // per device
  std::vector<double> sinr_cloud;           // per fog
  std::vector<double> rate_fog;             // per device, bit/s
  std::vector<double> rate_cloud;           // per fog, bit/s
  std::vector<double> trans_delay;          // per device, s
};

inline LinkBudget link_budget(const Placement& pl, const NetworkConfig& cfg,
                              const ChannelDraws& draws) {
  LinkBudget lb;
  lb.fog_indices = pl.fog_indices;
  for (std::size_t i = 0; i < pl.coords.size(); ++i)
    if (!pl.is_fog(i)) lb.device_indices.push_back(i);

  if (draws.h_device.size() != lb.device_indices.size() ||
      draws.h_fog.size() != lb.fog_indices.size())
    throw simulation_error("channel draws must provide one h per device link and per fog link");

  const double alpha = static_cast<double>(cfg.alpha);
  const double W = cfg.bandwidth_W;
  const Point cloud{0.0, 0.0};

  for (std::size_t j = 0; j < lb.fog_indices.size(); ++j) {
    const auto f = lb.fog_indices[j];
    const double y = distance(pl.coords[f], cloud);
    if (y == 0.0)
      throw simulation_error("fog node " + std::to_string(f) + " colocated with the cloud");
    if (!(draws.h_fog[j] > 0.0)) throw simulation_error("channel coefficients must be > 0");
    const double sinr = cfg.tx_power_fog_P * draws.h_fog[j] * std::pow(y, -alpha) /
                        (cfg.noise_var_sigma2 + cfg.interference_cloud_I);
    lb.sinr_cloud.push_back(sinr);
    lb.rate_cloud.push_back(W * std::log2(1.0 + sinr));
  }

  const double M = static_cast<double>(cfg.packet_bits_M);
  const double MK = static_cast<double>(cfg.packet_bits_M - cfg.processed_bits_K);
  for (std::size_t k = 0; k < lb.device_indices.size(); ++k) {
    const auto d = lb.device_indices[k];
    const auto f = pl.assignment.at(d);
    const double x = distance(pl.coords[d], pl.coords[f]);
    if (x == 0.0)
      throw simulation_error("device " + std::to_string(d) + " colocated with fog node " +
                             std::to_string(f));
    if (!(draws.h_device[k] > 0.0)) throw simulation_error("channel coefficients must be > 0");
    const double sinr = cfg.tx_power_device_P * draws.h_device[k] * std::pow(x, -alpha) /
                        (cfg.noise_var_sigma2 + cfg.interference_fog_I);
    lb.sinr_fog.push_back(sinr);
    const double rf = W * std::log2(1.0 + sinr);
    lb.rate_fog.push_back(rf);

    const std::size_t jpos =
        std::lower_bound(lb.fog_indices.begin(), lb.fog_indices.end(), f) -
        lb.fog_indices.begin();
    lb.trans_delay.push_back(M / rf + MK / lb.rate_cloud[jpos] + cfg.fixed_delays);
  }
  return lb;
}

namespace detail {

/// One Monte Carlo trial of the dimensioning model the objective chain is
/// built on: n1 fog nodes uniform on the square (distance to the cloud is
/// what matters), devices split evenly across fogs and placed uniformly in
/// each fog's range disc of radius r = pi*R/n1. The fog upload carries one
/// aggregated (M-K)-bit packet per fog, so its airtime is shared by the
/// fog's devices. Returns the per-device effective end-to-end rate
/// M / (round airtime / n0), or nullopt when a colocated pair is drawn.
inline std::optional<double> model_trial_rate(const NetworkConfig& cfg,
                                              std::int64_t n1, double tx_power,
                                              ChannelModel channel, Rng& rng) {
  const double alpha = static_cast<double>(cfg.alpha);
  const double a = cfg.half_side_a;
  const double W = cfg.bandwidth_W;
  const double sigma2 = 1.0;  // snr_db fixes P/sigma^2 at 1 km reference
  const double M = static_cast<double>(cfg.packet_bits_M);
  const double MK = static_cast<double>(cfg.packet_bits_M - cfg.processed_bits_K);
  const std::int64_t n0 = cfg.total_nodes_n - n1;
  const double r = fog_range(cfg.fog_radius_R, static_cast<double>(n1));

  double total_delay = 0.0;
  std::int64_t remainder = n0 % n1;
  for (std::int64_t j = 0; j < n1; ++j) {
    const double u = rng.uniform(-a, a);
    const double v = rng.uniform(-a, a);
    const double y = std::hypot(u, v);
    if (y == 0.0) return std::nullopt;
    const std::int64_t devices = n0 / n1 + (j < remainder ? 1 : 0);

    for (std::int64_t i = 0; i < devices; ++i) {
      const double x = r * std::sqrt(rng.u01());
      if (x == 0.0) return std::nullopt;
      const double h = draw_channel(channel, cfg.channel_inv_mean_c, rng);
      const double sinr = tx_power * h * std::pow(x, -alpha) /
                          (sigma2 + cfg.interference_fog_I);
      total_delay += M / (W * std::log2(1.0 + sinr));
    }
    if (devices > 0) {
      const double h = draw_channel(channel, cfg.channel_inv_mean_c, rng);
      const double sinr = tx_power * h * std::pow(y, -alpha) /
                          (sigma2 + cfg.interference_cloud_I);
      total_delay += MK / (W * std::log2(1.0 + sinr));
    }
  }
  total_delay += static_cast<double>(n0) * cfg.fixed_delays;
  return static_cast<double>(n0) * M / total_delay;
}

inline double run_trial(const NetworkConfig& cfg, std::int64_t n1, double tx_power,
                        ChannelModel channel, std::uint64_t tseed) {
  for (std::uint64_t redraw = 0; redraw <= 100; ++redraw) {
    Rng rng(redraw == 0 ? tseed : redraw_seed(tseed, redraw));
    if (const auto rate = model_trial_rate(cfg, n1, tx_power, channel, rng))
      return *rate;
  }
  throw simulation_error("trial kept drawing colocated nodes after 100 re-draws");
}

}  // namespace detail

/// Average per-device data rate for a fixed fog count n1 at the given SNR:
/// trials use hashed per-trial sub-seeds (see trial_seed) and are averaged
/// in trial order, so the result is bit-identical across runs.
inline double average_rate(const NetworkConfig& cfg, std::int64_t n1, double snr_db,
                           std::int64_t trials, std::uint64_t seed,
                           ChannelModel channel = ChannelModel::unit) {
  if (n1 < 1 || n1 > cfg.total_nodes_n - 1)
    throw config_error("fog count n1 must satisfy 1 <= n1 <= n-1, got " +
                       std::to_string(n1));
  if (trials < 1) throw config_error("trials must be >= 1");
  const double tx_power = std::pow(10.0, snr_db / 10.0);
  double acc = 0.0;
  for (std::int64_t t = 0; t < trials; ++t)
    acc += detail::run_trial(cfg, n1, tx_power, channel,
                             trial_seed(seed, static_cast<std::uint64_t>(t)));
  return acc / static_cast<double>(trials);
}

/// Average data rates for the optimized fog count versus a per-trial
/// uniformly random fog count, over a grid of SNR points.
struct RateRatioReport {
  std::vector<double> snr_grid_db;
  std::vector<double> rate_opt;
  std::vector<double> rate_unopt;
  std::vector<double> ratio;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t n = 0;
  int alpha = 0;
  std::int64_t n1_opt = 0;
};

inline constexpr const char* kRateDefinition =
    "per-device effective end-to-end rate M/(T/n0); T sums M/R_fog over devices "
    "and one aggregated (M-K)/R_cloud upload per fog; devices uniform in each "
    "fog's range disc r=pi*R/n1, fog-to-cloud distances from uniform nodes on "
    "the square; P/sigma^2 = 10^(snr_db/10) at 1 km";

/// Runs both arms on every SNR point. The optimized arm uses
/// n1 = max(1, round(n * analytic_p)); the unoptimized arm draws n1
/// uniformly from {1,...,n-1} independently per trial. Grid point k gives
/// the arms sub-streams splitmix64(splitmix64(seed) + 2k) and
/// splitmix64(splitmix64(seed) + 2k + 1); trials then derive per-trial
/// seeds via trial_seed.
inline RateRatioReport rate_ratio_experiment(const NetworkConfig& cfg,
                                             const std::vector<double>& snr_grid_db,
                                             std::int64_t trials, std::uint64_t seed,
                                             ChannelModel channel = ChannelModel::unit) {
  if (snr_grid_db.empty()) throw config_error("SNR grid must be nonempty");
  if (trials < 1) throw config_error("trials must be >= 1");

  RateRatioReport rep;
  rep.snr_grid_db = snr_grid_db;
  rep.trials = trials;
  rep.seed = seed;
  rep.n = cfg.total_nodes_n;
  rep.alpha = cfg.alpha;

  const double pa = analytic_p(cfg.alpha, cfg.half_side_a, cfg.fog_radius_R,
                               static_cast<double>(cfg.total_nodes_n));
  rep.n1_opt = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::llround(static_cast<double>(cfg.total_nodes_n) * pa)));

  const std::uint64_t base = splitmix64(seed);
  for (std::size_t k = 0; k < snr_grid_db.size(); ++k) {
    const double snr = snr_grid_db[k];
    const double tx_power = std::pow(10.0, snr / 10.0);
    const std::uint64_t opt_seed = splitmix64(base + 2 * k);
    const std::uint64_t unopt_seed = splitmix64(base + 2 * k + 1);

    rep.rate_opt.push_back(average_rate(cfg, rep.n1_opt, snr, trials, opt_seed, channel));

    double acc = 0.0;
    for (std::int64_t t = 0; t < trials; ++t) {
      const std::uint64_t tseed = trial_seed(unopt_seed, static_cast<std::uint64_t>(t));
      Rng pick(tseed);
      const std::int64_t n1 =
          1 + static_cast<std::int64_t>(pick.uniform_index(
                  static_cast<std::uint64_t>(cfg.total_nodes_n - 1)));
      // the trial itself runs on a seed one mixing step past the n1 draw
      acc += detail::run_trial(cfg, n1, tx_power, channel, splitmix64(tseed));
    }
    rep.rate_unopt.push_back(acc / static_cast<double>(trials));
    rep.ratio.push_back(rep.rate_opt.back() / rep.rate_unopt.back());
  }
  return rep;
}

/// CSV header: snr_db,rate_opt_bps,rate_unopt_bps,ratio
inline void report_to_csv(const RateRatioReport& rep, std::ostream& os) {
  os << "snr_db,rate_opt_bps,rate_unopt_bps,ratio\n";
  for (std::size_t k = 0; k < rep.snr_grid_db.size(); ++k)
    os << fmt_full(rep.snr_grid_db[k]) << ',' << fmt_full(rep.rate_opt[k]) << ','
       << fmt_full(rep.rate_unopt[k]) << ',' << fmt_full(rep.ratio[k]) << '\n';
}

/// Metadata sidecar accompanying the CSV.
inline nlohmann::json report_metadata(const RateRatioReport& rep,
                                      const NetworkConfig& cfg) {
  return nlohmann::json{{"seed", rep.seed},
                        {"trials", rep.trials},
                        {"n", rep.n},
                        {"alpha", rep.alpha},
                        {"a_km", cfg.half_side_a},
                        {"R_km", cfg.fog_radius_R},
                        {"rate_definition", kRateDefinition},
                        {"prng", kPrngName}};
}

}  // namespace fogopt
