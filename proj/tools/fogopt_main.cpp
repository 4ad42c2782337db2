// fogopt: sizes the fog layer of a cloud-fog-thing network.
//
// Subcommands: optimize | tables | objective-sweep | simulate | place
// Exit codes: 0 success, 2 usage/config error, 3 out-of-model,
//             4 runtime simulation failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fogopt/errors.hpp"
#include "fogopt/format.hpp"
#include "fogopt/geometry.hpp"
#include "fogopt/model.hpp"
#include "fogopt/optimizer.hpp"
#include "fogopt/simulator.hpp"
#include "fogopt/tables.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitOutOfModel = 3;
constexpr int kExitRuntime = 4;

struct CommonOpts {
  std::optional<double> a;
  std::optional<double> R;
  std::optional<std::int64_t> n;
  std::optional<int> alpha;
  std::string config_path;
  bool paper_defaults = false;
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--a", o.a, "Half side of the square deployment (km)")->envname("FOGOPT_A");
  cmd->add_option("--R", o.R, "Radius of the circular mesh fog network (km)")->envname("FOGOPT_R");
  cmd->add_option("--n", o.n, "Total number of nodes")->envname("FOGOPT_N");
  cmd->add_option("--alpha", o.alpha, "Path-loss exponent (1, 2 or 4)")->envname("FOGOPT_ALPHA");
  cmd->add_option("--config", o.config_path, "Flat JSON config file; command line wins")
      ->envname("FOGOPT_CONFIG");
  cmd->add_flag("--paper-defaults", o.paper_defaults,
                "Pin a=50 km and R=0.0765a (the reference geometry)");
}

void set_key(nlohmann::json& doc, const char* key, const char* alias,
             const nlohmann::json& value) {
  if (alias) doc.erase(alias);
  doc[key] = value;
}

nlohmann::json config_document(const CommonOpts& o) {
  nlohmann::json doc = nlohmann::json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw fogopt::config_error("cannot open config file '" + o.config_path + "'");
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw fogopt::config_error("cannot parse config file '" + o.config_path +
                                 "': " + e.what());
    }
  }
  if (o.paper_defaults) {
    set_key(doc, "half_side_a", "a", 50.0);
    set_key(doc, "fog_radius_R", "R", 0.0765 * 50.0);
  }
  if (o.a) set_key(doc, "half_side_a", "a", *o.a);
  if (o.R) set_key(doc, "fog_radius_R", "R", *o.R);
  if (o.n) set_key(doc, "total_nodes_n", "n", *o.n);
  if (o.alpha) set_key(doc, "alpha", nullptr, *o.alpha);
  return doc;
}

/// "start:stop:step" -> inclusive grid.
std::vector<double> parse_grid(const std::string& s) {
  double start = 0, stop = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
      step <= 0 || stop < start)
    throw fogopt::config_error("grid '" + s + "' must be start:stop:step with step > 0");
  std::vector<double> grid;
  for (double v = start; v <= stop + 1e-12; v += step) grid.push_back(v);
  return grid;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw fogopt::simulation_error("cannot write to '" + path + "'");
  return out;
}

int run_optimize(const CommonOpts& common, const std::string& format) {
  const auto cfg = fogopt::load_config(config_document(common));
  const auto res = fogopt::optimize(cfg);
  using fogopt::fmt_full;
  using fogopt::fmt_short;
  if (format == "json") {
    nlohmann::json j{{"p_analytic", res.p_analytic},
                     {"p_numeric", res.p_numeric},
                     {"fog_count_n1", res.fog_count_n1},
                     {"device_count_n0", res.device_count_n0},
                     {"devices_per_fog", res.devices_per_fog},
                     {"objective_at_optimum", res.objective_at_optimum}};
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "p_analytic,p_numeric,fog_count_n1,device_count_n0,devices_per_fog,"
                 "objective_at_optimum\n"
              << fmt_full(res.p_analytic) << ',' << fmt_full(res.p_numeric) << ','
              << fmt_full(res.fog_count_n1) << ',' << fmt_full(res.device_count_n0) << ','
              << fmt_full(res.devices_per_fog) << ',' << fmt_full(res.objective_at_optimum)
              << '\n';
  } else {
    std::cout << "p (analytic)      " << fmt_short(res.p_analytic) << '\n'
              << "p (numeric)       " << fmt_short(res.p_numeric) << '\n'
              << "fog nodes n1      " << fmt_short(res.fog_count_n1) << '\n'
              << "end devices n0    " << fmt_short(res.device_count_n0) << '\n'
              << "devices per fog   " << fmt_short(res.devices_per_fog) << '\n'
              << "objective J       " << fmt_short(res.objective_at_optimum) << '\n';
  }
  return 0;
}

int run_tables(const std::string& out) {
  if (out.empty()) {
    fogopt::tables_to_csv(std::cout);
  } else {
    auto os = open_out(out);
    fogopt::tables_to_csv(os);
  }
  return 0;
}

int run_sweep(const CommonOpts& common, const std::vector<std::int64_t>& n_list,
              const std::string& p_grid, const std::string& out) {
  if (!common.alpha) throw fogopt::config_error("objective-sweep requires --alpha");
  const auto grid = parse_grid(p_grid);
  if (grid.front() <= 0.0 || grid.back() >= 1.0)
    throw fogopt::config_error("p grid must lie inside (0, 1)");

  CommonOpts filled = common;
  if (!filled.n) filled.n = n_list.front();
  const auto cfg = fogopt::load_config(config_document(filled));

  std::ostringstream csv;
  csv << "alpha,n,p,J\n";
  for (const auto n : n_list) {
    const fogopt::ObjectiveProfile profile{cfg.alpha, cfg.half_side_a, cfg.fog_radius_R,
                                           static_cast<double>(n)};
    for (const double p : grid)
      csv << cfg.alpha << ',' << n << ',' << fogopt::fmt_full(p) << ','
          << fogopt::fmt_full(profile.value(p)) << '\n';
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    auto os = open_out(out);
    os << csv.str();
  }
  return 0;
}

int run_simulate(const CommonOpts& common, const std::string& snr,
                 std::int64_t trials, std::uint64_t seed, const std::string& out) {
  if (trials < 1) throw fogopt::config_error("trials must be >= 1");
  const auto cfg = fogopt::load_config(config_document(common));
  const auto grid = parse_grid(snr);
  const auto rep = fogopt::rate_ratio_experiment(cfg, grid, trials, seed);

  {
    auto os = open_out(out + ".csv");
    fogopt::report_to_csv(rep, os);
  }
  {
    auto os = open_out(out + ".meta.json");
    os << fogopt::report_metadata(rep, cfg).dump(2) << '\n';
  }

  double lo = rep.ratio.front(), hi = rep.ratio.front(), sum = 0.0;
  for (const double r : rep.ratio) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    sum += r;
  }
  std::cout << "wrote " << out << ".csv and " << out << ".meta.json; ratio min="
            << fogopt::fmt_short(lo) << " mean="
            << fogopt::fmt_short(sum / static_cast<double>(rep.ratio.size()))
            << " max=" << fogopt::fmt_short(hi) << '\n';
  return 0;
}

int run_place(const CommonOpts& common, std::int64_t n1, std::uint64_t seed,
              const std::string& out) {
  CommonOpts filled = common;
  // placement needs only the square and the node count
  if (!filled.alpha) filled.alpha = 1;
  if (!filled.R && filled.a) filled.R = 0.0765 * *filled.a;
  const auto cfg = fogopt::load_config(config_document(filled));
  const auto pl = fogopt::sample_placement(cfg, n1, seed);
  {
    auto os = open_out(out + ".json");
    os << fogopt::placement_to_json(pl).dump(2) << '\n';
  }
  {
    auto os = open_out(out + ".csv");
    fogopt::placement_to_csv(pl, os);
  }
  std::cout << "wrote " << out << ".json and " << out << ".csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fogopt: optimum fog-layer sizing for cloud-fog-thing networks"};
  app.require_subcommand(1);
  app.footer(
      "Options may also be supplied via environment variables with the FOGOPT_ prefix\n"
      "(e.g. FOGOPT_SEED=42). Exit codes: 0 ok, 2 usage/config, 3 out-of-model,\n"
      "4 simulation failure.");

  CommonOpts opt_common, sweep_common, sim_common, place_common;
  std::string format = "text";
  std::string out_tables, out_sweep, out_place = "placement", out_sim = "rate_ratio";
  std::string snr = "0:30:5", p_grid = "0.001:0.2:0.001";
  std::vector<std::int64_t> n_list{200, 400, 800};
  std::int64_t trials = 1000, n1 = 0;
  std::uint64_t seed = 0, place_seed = 0;

  auto* cmd_optimize =
      app.add_subcommand("optimize", "Optimum fog count for one configuration");
  add_common_options(cmd_optimize, opt_common);
  cmd_optimize->add_option("--format", format, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  auto* cmd_tables = app.add_subcommand(
      "tables", "Reference tables (alpha in {1,2,4} x n in {200,400,800}, a=50, R=0.0765a)");
  cmd_tables->add_option("--out", out_tables, "Write CSV here instead of stdout");

  auto* cmd_sweep =
      app.add_subcommand("objective-sweep", "Objective J(p) over a p grid, CSV");
  add_common_options(cmd_sweep, sweep_common);
  cmd_sweep->add_option("--n-list", n_list, "Node counts to sweep")->delimiter(',');
  cmd_sweep->add_option("--p-grid", p_grid, "p grid as start:stop:step");
  cmd_sweep->add_option("--out", out_sweep, "Write CSV here instead of stdout");

  auto* cmd_simulate = app.add_subcommand(
      "simulate", "Optimized vs unoptimized average-rate ratio over an SNR grid");
  add_common_options(cmd_simulate, sim_common);
  cmd_simulate->add_option("--snr", snr, "SNR grid in dB as start:stop:step")
      ->envname("FOGOPT_SNR");
  cmd_simulate->add_option("--trials", trials, "Monte Carlo trials per arm and SNR point")
      ->envname("FOGOPT_TRIALS");
  cmd_simulate->add_option("--seed", seed, "64-bit experiment seed")->envname("FOGOPT_SEED");
  cmd_simulate->add_option("--out", out_sim, "Output base path (.csv, .meta.json)");

  auto* cmd_place = app.add_subcommand("place", "Sample one placement, export JSON + CSV");
  add_common_options(cmd_place, place_common);
  cmd_place->add_option("--n1", n1, "Number of fog nodes to elect")->required();
  cmd_place->add_option("--seed", place_seed, "64-bit placement seed")->envname("FOGOPT_SEED");
  cmd_place->add_option("--out", out_place, "Output base path (.json, .csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cmd_optimize->parsed()) return run_optimize(opt_common, format);
    if (cmd_tables->parsed()) return run_tables(out_tables);
    if (cmd_sweep->parsed()) return run_sweep(sweep_common, n_list, p_grid, out_sweep);
    if (cmd_simulate->parsed()) return run_simulate(sim_common, snr, trials, seed, out_sim);
    if (cmd_place->parsed()) return run_place(place_common, n1, place_seed, out_place);
  } catch (const fogopt::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fogopt::out_of_model_error& e) {
    std::cerr << "out of model: " << e.what() << '\n';
    return kExitOutOfModel;
  } catch (const fogopt::simulation_error& e) {
    std::cerr << "simulation failure: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
