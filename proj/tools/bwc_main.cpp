#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bwc/capacity.hpp"
#include "bwc/codesim.hpp"
#include "bwc/errors.hpp"
#include "bwc/io.hpp"
#include "bwc/scenario.hpp"
#include "bwc/verify.hpp"

namespace {

bwc::AppConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream f(path);
  if (!f) throw bwc::config_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return bwc::config_from_json(ss.str());
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f)
    throw bwc::config_error("cannot open output file '" + out_path + "'");
  f << text;
}

nlohmann::ordered_json entry_json(const bwc::CapacityEntry& e) {
  nlohmann::ordered_json o;
  o["raw"] = e.raw;
  o["value"] = e.value;
  o["clipped"] = e.clipped;
  o["worst_tau"] = e.worst_tau;
  o["worst_eta"] = e.worst_eta;
  return o;
}

int run(int argc, char** argv) {
  CLI::App app{
      "Private capacities of a lossy bosonic wiretap link under binary "
      "phase-shift keying, plus desk-scale verification and code "
      "experiments"};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  std::string config_path, out_path, format = "csv";

  auto* cap_cmd = app.add_subcommand(
      "capacity", "Capacity triple at one parameter-set working point");
  std::vector<double> tau_set, eta_set;
  double energy_override = -1.0;
  cap_cmd->add_option("--config", config_path, "JSON config file");
  cap_cmd->add_option("--tau", tau_set,
                      "Receiver transmissivities (repeatable)");
  cap_cmd->add_option("--eta", eta_set,
                      "Wiretap transmissivities (repeatable)");
  cap_cmd->add_option("--energy", energy_override,
                      "Input mean photon number E");
  cap_cmd->add_option("--out", out_path, "Output path (default stdout)");

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Capacity sweep over the transmissivity grid");
  int points_override = -1;
  double tau_min_override = -1.0, tau_max_override = -1.0;
  double eta_fraction_override = -1.0;
  sweep_cmd->add_option("--config", config_path, "JSON config file");
  sweep_cmd->add_option("--points", points_override, "Grid points (>= 2)");
  sweep_cmd->add_option("--energy", energy_override,
                        "Input mean photon number E");
  sweep_cmd->add_option("--tau-min", tau_min_override, "Grid lower end");
  sweep_cmd->add_option("--tau-max", tau_max_override, "Grid upper end");
  sweep_cmd->add_option("--eta-fraction", eta_fraction_override,
                        "Worst-case eta^2 / tau^2");
  sweep_cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--out", out_path, "Output path (default stdout)");

  auto* sim_cmd = app.add_subcommand(
      "simulate", "Randomized wiretap-code experiments at small block length");
  bwc::SimulateParams sim;
  sim_cmd->add_option("--config", config_path, "JSON config file");
  sim_cmd->add_option("--M", sim.M, "Messages");
  sim_cmd->add_option("--L", sim.L, "Obfuscation indices per message");
  sim_cmd->add_option("--n", sim.n, "Symbols per codeword");
  sim_cmd->add_option("--energy", energy_override,
                      "Input mean photon number E");
  double sim_tau = -1.0, sim_eta = -1.0, sim_prune = -1.0;
  std::uint64_t sim_seed = 0, sim_seed_count = 0;
  sim_cmd->add_option("--tau", sim_tau, "Receiver transmissivity");
  sim_cmd->add_option("--eta", sim_eta, "Wiretap transmissivity");
  sim_cmd->add_option("--seed", sim_seed, "First codebook seed");
  sim_cmd->add_option("--seeds", sim_seed_count,
                      "Number of consecutive seeds");
  sim_cmd->add_option("--prune", sim_prune,
                      "Typicality pruning delta (> 0 enables)");
  sim_cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sim_cmd->add_option("--out", out_path, "Output path (default stdout)");

  auto* verify_cmd =
      app.add_subcommand("verify", "Run a named verification suite");
  std::string suite = "all";
  bwc::VerifyOptions vopt;
  verify_cmd->add_option("suite", suite,
                         "identities, oracle, lemmas, typicality, "
                         "montecarlo, or all");
  verify_cmd->add_option("--perturb-hbpsk", vopt.perturb_hbpsk,
                         "Inject an offset into the dual-formula entropy "
                         "check (harness self-test)");
  verify_cmd->add_option("--out", out_path, "Output path (default stdout)");

  auto* budget_cmd = app.add_subcommand(
      "budget", "Symbols transmittable within one coherence window");
  budget_cmd->add_option("--config", config_path, "JSON config file");
  budget_cmd->add_option("--out", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // app.exit prints help for help requests (exit 0) and the usage message
    // otherwise; fold every usage failure onto exit code 2.
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  bwc::AppConfig cfg = load_config(config_path);
  if (energy_override >= 0.0) cfg.scenario.energy_E = energy_override;

  if (cap_cmd->parsed()) {
    if (tau_set.empty()) tau_set = {cfg.scenario.tau_max};
    if (eta_set.empty())
      eta_set = {std::sqrt(cfg.scenario.worst_case_eta_fraction) *
                 cfg.scenario.tau_max};
    bwc::ChannelParamSet point{tau_set, eta_set, cfg.scenario.energy_E};
    bwc::CapacityReport rep = bwc::capacity_report(point);
    nlohmann::ordered_json o;
    o["tau_set"] = tau_set;
    o["eta_set"] = eta_set;
    o["energy_E"] = cfg.scenario.energy_E;
    o["qq"] = entry_json(rep.qq);
    o["cq"] = entry_json(rep.cq);
    o["cc"] = entry_json(rep.cc);
    write_output(o.dump(2), out_path);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    if (points_override >= 0) cfg.scenario.grid_points = points_override;
    if (tau_min_override >= 0.0) cfg.scenario.tau_min = tau_min_override;
    if (tau_max_override >= 0.0) cfg.scenario.tau_max = tau_max_override;
    if (eta_fraction_override >= 0.0)
      cfg.scenario.worst_case_eta_fraction = eta_fraction_override;
    auto rows = bwc::run_sweep(cfg.scenario);
    write_output(format == "json" ? bwc::sweep_to_json(rows)
                                  : bwc::sweep_to_csv(rows),
                 out_path);
    return 0;
  }

  if (sim_cmd->parsed()) {
    if (energy_override >= 0.0) sim.energy_E = energy_override;
    else sim.energy_E = cfg.simulate.energy_E;
    bwc::SimulateParams base = cfg.simulate;
    base.energy_E = sim.energy_E;
    if (sim_cmd->count("--M")) base.M = sim.M;
    if (sim_cmd->count("--L")) base.L = sim.L;
    if (sim_cmd->count("--n")) base.n = sim.n;
    if (sim_tau >= 0.0) base.tau = sim_tau;
    if (sim_eta >= 0.0) base.eta = sim_eta;
    if (sim_cmd->count("--seed")) base.seed = sim_seed;
    if (sim_cmd->count("--seeds")) base.seed_count = sim_seed_count;
    if (sim_prune >= 0.0) base.prune_delta = sim_prune;
    if (base.seed_count < 1)
      throw bwc::config_error("simulate: --seeds must be >= 1");
    std::vector<bwc::WiretapCodeReport> reports;
    for (std::uint64_t k = 0; k < base.seed_count; ++k) {
      std::optional<double> prune;
      if (base.prune_delta > 0.0) prune = base.prune_delta;
      bwc::Codebook cb = bwc::sample_codebook(base.M, base.L, base.n,
                                              base.energy_E, base.seed + k,
                                              prune);
      reports.push_back(bwc::run_wiretap_experiment(cb, base.tau, base.eta));
    }
    write_output(format == "json" ? bwc::simulate_to_json(reports)
                                  : bwc::simulate_to_csv(reports),
                 out_path);
    return 0;
  }

  if (verify_cmd->parsed()) {
    bwc::SuiteReport rep = bwc::run_suite(suite, vopt);
    write_output(bwc::report_to_json(rep), out_path);
    return rep.pass ? 0 : 1;
  }

  if (budget_cmd->parsed()) {
    write_output(std::to_string(bwc::block_budget(cfg.scenario)), out_path);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const bwc::resource_error& e) {
    std::cerr << "resource error: " << e.what() << std::endl;
    return 3;
  } catch (const bwc::config_error& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const bwc::property_violation& e) {
    std::cerr << "property violation: " << e.what() << std::endl;
    return 1;
  } catch (const bwc::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << std::endl;
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << std::endl;
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
