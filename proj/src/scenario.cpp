#include "bwc/scenario.hpp"

#include <cmath>
#include <string>

#include "bwc/capacity.hpp"
#include "bwc/errors.hpp"

namespace bwc {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw config_error("scenario config: " + field + " " + what);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(energy_E > 0.0, "energy_E", "must be > 0");
  require(tau_min > 0.0 && tau_min <= 1.0, "tau_min", "must lie in (0,1]");
  require(tau_max > 0.0 && tau_max <= 1.0, "tau_max", "must lie in (0,1]");
  require(tau_min <= tau_max, "tau_min", "must not exceed tau_max");
  require(eta_sq_fraction_min > 0.0 && eta_sq_fraction_min <= 1.0,
          "eta_sq_fraction_min", "must lie in (0,1]");
  require(eta_sq_fraction_max > 0.0 && eta_sq_fraction_max <= 1.0,
          "eta_sq_fraction_max", "must lie in (0,1]");
  require(eta_sq_fraction_min <= eta_sq_fraction_max, "eta_sq_fraction_min",
          "must not exceed eta_sq_fraction_max");
  require(grid_points >= 2, "grid_points", "must be >= 2");
  require(worst_case_eta_fraction > 0.0 && worst_case_eta_fraction <= 1.0,
          "worst_case_eta_fraction", "must lie in (0,1]");
  require(symbol_rate > 0.0, "symbol_rate", "must be > 0");
  require(coherence_window > 0.0, "coherence_window", "must be > 0");
  require(feedback_fraction >= 0.0 && feedback_fraction <= 1.0,
          "feedback_fraction", "must lie in [0,1]");
}

std::uint64_t block_budget(const ScenarioConfig& cfg) {
  cfg.validate();
  return static_cast<std::uint64_t>(
      std::floor(cfg.symbol_rate * cfg.coherence_window *
                 cfg.feedback_fraction));
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg) {
  cfg.validate();
  std::vector<SweepRow> rows;
  rows.reserve(cfg.grid_points);
  double log_lo = std::log(cfg.tau_min);
  double log_hi = std::log(cfg.tau_max);
  for (int i = 0; i < cfg.grid_points; ++i) {
    double tau;
    if (i == 0)
      tau = cfg.tau_min;  // keep endpoints exact, no exp/log round trip
    else if (i == cfg.grid_points - 1)
      tau = cfg.tau_max;
    else
      tau = std::exp(log_lo + (log_hi - log_lo) * i /
                               static_cast<double>(cfg.grid_points - 1));
    double eta = std::sqrt(cfg.worst_case_eta_fraction) * tau;
    ChannelParamSet point{{tau}, {eta}, cfg.energy_E};
    CapacityReport rep = capacity_report(point);
    SweepRow row;
    row.E_r = received_photon_number(tau, cfg.energy_E);
    row.qq_raw = rep.qq.raw;
    row.qq = rep.qq.value;
    row.clipped_qq = rep.qq.clipped;
    row.cq_raw = rep.cq.raw;
    row.cq = rep.cq.value;
    row.clipped_cq = rep.cq.clipped;
    row.cc_raw = rep.cc.raw;
    row.cc = rep.cc.value;
    row.clipped_cc = rep.cc.clipped;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bwc
