#pragma once

#include <cstdint>
#include <string>
#include <tuple>

#include <json.hpp>

#include "fogopt/errors.hpp"

namespace fogopt {

/// Deployment geometry, node budget and radio constants for one
/// cloud-fog-thing network. The square spans [-a, a]^2 with the cloud at
/// the origin; lengths are km, powers linear watts, bandwidth Hz.
struct NetworkConfig {
  double half_side_a = 0.0;
  double fog_radius_R = 0.0;
  std::int64_t total_nodes_n = 0;
  int alpha = 0;  // path-loss exponent, one of {1, 2, 4}

  double tx_power_device_P = 1.0;
  double tx_power_fog_P = 1.0;
  double noise_var_sigma2 = 1.0;
  double interference_fog_I = 0.0;
  double interference_cloud_I = 0.0;
  double bandwidth_W = 1.0;
  std::int64_t packet_bits_M = 1000;
  std::int64_t processed_bits_K = 500;  // defaults to M/2
  double channel_inv_mean_c = 1.0;      // E[1/h]
  double fixed_delays = 0.0;            // tau_proc + tau_queue + tau_prop, seconds

  bool operator==(const NetworkConfig&) const = default;
};

namespace detail {

inline void check(bool ok, const std::string& msg) {
  if (!ok) throw config_error(msg);
}

}  // namespace detail

/// Validates every invariant; throws config_error naming the key and bound.
inline void validate(const NetworkConfig& c) {
  using detail::check;
  check(c.half_side_a > 0, "half_side_a must be > 0");
  check(c.fog_radius_R > 0, "fog_radius_R must be > 0");
  check(c.fog_radius_R < c.half_side_a, "fog_radius_R must be < half_side_a");
  check(c.total_nodes_n >= 2, "total_nodes_n must be >= 2");
  check(c.alpha == 1 || c.alpha == 2 || c.alpha == 4,
        "alpha must be one of {1, 2, 4}");
  check(c.tx_power_device_P > 0, "tx_power_device_P must be > 0");
  check(c.tx_power_fog_P > 0, "tx_power_fog_P must be > 0");
  check(c.noise_var_sigma2 > 0, "noise_var_sigma2 must be > 0");
  check(c.interference_fog_I >= 0, "interference_fog_I must be >= 0");
  check(c.interference_cloud_I >= 0, "interference_cloud_I must be >= 0");
  check(c.bandwidth_W > 0, "bandwidth_W must be > 0");
  check(c.packet_bits_M > 0, "packet_bits_M must be > 0");
  check(c.processed_bits_K >= 0 && c.processed_bits_K <= c.packet_bits_M,
        "processed_bits_K must be in [0, packet_bits_M]");
  check(c.channel_inv_mean_c > 0, "channel_inv_mean_c must be > 0");
  check(c.fixed_delays >= 0, "fixed_delays must be >= 0");
}

/// Loads a flat key/value JSON document. Required: half_side_a,
/// fog_radius_R, total_nodes_n, alpha (short aliases a, R, n accepted).
/// Remaining keys are optional and take the documented defaults;
/// processed_bits_K defaults to packet_bits_M / 2.
inline NetworkConfig load_config(const nlohmann::json& doc) {
  NetworkConfig c;

  auto fetch = [&doc](const char* key, const char* alias) -> const nlohmann::json* {
    const bool has_key = doc.contains(key);
    const bool has_alias = alias != nullptr && doc.contains(alias);
    if (has_key && has_alias && doc.at(key) != doc.at(alias))
      throw config_error(std::string("conflicting values for '") + key +
                         "' and its alias '" + alias + "'");
    if (has_key) return &doc.at(key);
    if (has_alias) return &doc.at(alias);
    return nullptr;
  };
  auto require = [&fetch](const char* key, const char* alias) {
    const auto* v = fetch(key, alias);
    if (!v) throw config_error(std::string("missing required key '") + key + "'");
    return v;
  };

  try {
    c.half_side_a = require("half_side_a", "a")->get<double>();
    c.fog_radius_R = require("fog_radius_R", "R")->get<double>();
    c.total_nodes_n = require("total_nodes_n", "n")->get<std::int64_t>();
    c.alpha = require("alpha", nullptr)->get<int>();

    if (const auto* v = fetch("tx_power_device_P", nullptr)) c.tx_power_device_P = v->get<double>();
    if (const auto* v = fetch("tx_power_fog_P", nullptr)) c.tx_power_fog_P = v->get<double>();
    if (const auto* v = fetch("noise_var_sigma2", nullptr)) c.noise_var_sigma2 = v->get<double>();
    if (const auto* v = fetch("interference_fog_I", nullptr)) c.interference_fog_I = v->get<double>();
    if (const auto* v = fetch("interference_cloud_I", nullptr)) c.interference_cloud_I = v->get<double>();
    if (const auto* v = fetch("bandwidth_W", nullptr)) c.bandwidth_W = v->get<double>();
    if (const auto* v = fetch("packet_bits_M", nullptr)) c.packet_bits_M = v->get<std::int64_t>();
    if (const auto* v = fetch("processed_bits_K", nullptr))
      c.processed_bits_K = v->get<std::int64_t>();
    else
      c.processed_bits_K = c.packet_bits_M / 2;
    if (const auto* v = fetch("channel_inv_mean_c", nullptr)) c.channel_inv_mean_c = v->get<double>();
    if (const auto* v = fetch("fixed_delays", nullptr)) c.fixed_delays = v->get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("malformed config value: ") + e.what());
  }

  validate(c);
  return c;
}

/// Canonical serialization (long key names); load_config(serialize(c)) == c.
inline nlohmann::json serialize(const NetworkConfig& c) {
  return nlohmann::json{
      {"half_side_a", c.half_side_a},
      {"fog_radius_R", c.fog_radius_R},
      {"total_nodes_n", c.total_nodes_n},
      {"alpha", c.alpha},
      {"tx_power_device_P", c.tx_power_device_P},
      {"tx_power_fog_P", c.tx_power_fog_P},
      {"noise_var_sigma2", c.noise_var_sigma2},
      {"interference_fog_I", c.interference_fog_I},
      {"interference_cloud_I", c.interference_cloud_I},
      {"bandwidth_W", c.bandwidth_W},
      {"packet_bits_M", c.packet_bits_M},
      {"processed_bits_K", c.processed_bits_K},
      {"channel_inv_mean_c", c.channel_inv_mean_c},
      {"fixed_delays", c.fixed_delays},
  };
}

/// n0 = n(1-p), n1 = np and the per-fog device load (n-np)/(np).
/// Counts stay fractional; rounding happens only in the simulator.
inline std::tuple<double, double, double> derived_quantities(const NetworkConfig& cfg,
                                                             double p) {
  if (!(p > 0.0 && p < 1.0))
    throw config_error("election probability p must lie in (0, 1)");
  const double n = static_cast<double>(cfg.total_nodes_n);
  const double n1 = n * p;
  const double n0 = n * (1.0 - p);
  return {n0, n1, (n - n1) / n1};
}

/// Optimum election probability and the node counts it implies.
/// p_analytic comes from the closed form, p_numeric from grid +
/// golden-section minimization of the same objective.
struct OptimizationResult {
  double p_analytic = 0.0;
  double p_numeric = 0.0;
  double fog_count_n1 = 0.0;
  double device_count_n0 = 0.0;
  double devices_per_fog = 0.0;
  double objective_at_optimum = 0.0;
};

}  // namespace fogopt
