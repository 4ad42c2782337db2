#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "fogopt/model.hpp"

using fogopt::config_error;
using fogopt::load_config;
using fogopt::NetworkConfig;
using nlohmann::json;

TEST_CASE("load_config applies documented defaults") {
  const auto cfg = load_config(json{{"a", 50}, {"R", 3.825}, {"n", 200}, {"alpha", 1}});
  CHECK(cfg.half_side_a == 50.0);
  CHECK(cfg.fog_radius_R == 3.825);
  CHECK(cfg.total_nodes_n == 200);
  CHECK(cfg.alpha == 1);
  CHECK(cfg.tx_power_device_P == 1.0);
  CHECK(cfg.tx_power_fog_P == 1.0);
  CHECK(cfg.noise_var_sigma2 == 1.0);
  CHECK(cfg.interference_fog_I == 0.0);
  CHECK(cfg.interference_cloud_I == 0.0);
  CHECK(cfg.bandwidth_W == 1.0);
  CHECK(cfg.packet_bits_M == 1000);
  CHECK(cfg.processed_bits_K == 500);
  CHECK(cfg.channel_inv_mean_c == 1.0);
  CHECK(cfg.fixed_delays == 0.0);
}

TEST_CASE("processed_bits_K defaults to half the packet") {
  const auto cfg = load_config(
      json{{"a", 50}, {"R", 3.825}, {"n", 200}, {"alpha", 1}, {"packet_bits_M", 2000}});
  CHECK(cfg.processed_bits_K == 1000);
}

TEST_CASE("long key names and aliases both load") {
  const auto cfg = load_config(json{{"half_side_a", 50},
                                    {"fog_radius_R", 3.825},
                                    {"total_nodes_n", 200},
                                    {"alpha", 2}});
  CHECK(cfg.half_side_a == 50.0);
  CHECK_THROWS_AS(load_config(json{{"half_side_a", 50},
                                   {"a", 40},
                                   {"R", 3.825},
                                   {"n", 200},
                                   {"alpha", 2}}),
                  config_error);
}

TEST_CASE("load_config rejects invariant violations") {
  CHECK_THROWS_AS(load_config(json{{"a", 50}, {"R", 60}, {"n", 200}, {"alpha", 2}}),
                  config_error);
  CHECK_THROWS_AS(load_config(json{{"a", 50}, {"R", 3.825}, {"n", 200}, {"alpha", 3}}),
                  config_error);
  CHECK_THROWS_AS(load_config(json{{"a", 50}, {"R", 3.825}, {"alpha", 1}}), config_error);
  CHECK_THROWS_AS(load_config(json{{"a", 50}, {"R", 3.825}, {"n", 1}, {"alpha", 1}}),
                  config_error);
  CHECK_THROWS_AS(load_config(json{{"a", -5}, {"R", 3.825}, {"n", 200}, {"alpha", 1}}),
                  config_error);
  CHECK_THROWS_AS(load_config(json{{"a", 50},
                                   {"R", 3.825},
                                   {"n", 200},
                                   {"alpha", 1},
                                   {"processed_bits_K", 1001}}),
                  config_error);
  CHECK_THROWS_AS(load_config(json{{"a", 50},
                                   {"R", 3.825},
                                   {"n", 200},
                                   {"alpha", 1},
                                   {"noise_var_sigma2", 0.0}}),
                  config_error);
}

TEST_CASE("error messages carry the key name") {
  try {
    load_config(json{{"a", 50}, {"R", 60}, {"n", 200}, {"alpha", 2}});
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("fog_radius_R") != std::string::npos);
  }
}

TEST_CASE("config round-trips through serialization") {
  auto doc = json{{"a", 50},         {"R", 3.825},          {"n", 200},
                  {"alpha", 4},      {"bandwidth_W", 2e6},  {"packet_bits_M", 1500},
                  {"fixed_delays", 0.125}, {"tx_power_fog_P", 0.31}};
  const auto cfg = load_config(doc);
  const auto again = load_config(fogopt::serialize(cfg));
  CHECK(cfg == again);
}

TEST_CASE("derived_quantities matches the closed forms") {
  const auto cfg = load_config(json{{"a", 50}, {"R", 3.825}, {"n", 200}, {"alpha", 1}});
  auto [n0, n1, N] = fogopt::derived_quantities(cfg, 0.04);
  CHECK(n0 == Catch::Approx(192.0).margin(1e-12));
  CHECK(n1 == Catch::Approx(8.0).margin(1e-12));
  CHECK(N == Catch::Approx(24.0).margin(1e-12));

  std::tie(n0, n1, N) = fogopt::derived_quantities(cfg, 0.5);
  CHECK(n0 == 100.0);
  CHECK(n1 == 100.0);
  CHECK(N == 1.0);

  const auto cfg800 = load_config(json{{"a", 50}, {"R", 3.825}, {"n", 800}, {"alpha", 1}});
  std::tie(n0, n1, N) = fogopt::derived_quantities(cfg800, 0.02);
  CHECK(n0 == Catch::Approx(784.0).margin(1e-12));
  CHECK(n1 == Catch::Approx(16.0).margin(1e-12));
  CHECK(N == Catch::Approx(49.0).margin(1e-12));

  CHECK_THROWS_AS(fogopt::derived_quantities(cfg, 0.0), config_error);
  CHECK_THROWS_AS(fogopt::derived_quantities(cfg, 1.0), config_error);
}

TEST_CASE("counts always sum back to n") {
  const auto cfg = load_config(json{{"a", 50}, {"R", 3.825}, {"n", 777}, {"alpha", 2}});
  for (const double p : {1e-4, 0.013, 0.2, 0.5, 0.9, 0.9999}) {
    const auto [n0, n1, N] = fogopt::derived_quantities(cfg, p);
    CHECK(n0 + n1 == Catch::Approx(777.0).epsilon(1e-15));
    CHECK(N == Catch::Approx(n0 / n1).epsilon(1e-10));
  }
}
