#pragma once

#include <cstdint>
#include <vector>

namespace bwc {

// Satellite-downlink working point: transmit energy, the atmospheric
// transmissivity range swept for the receiver, the eavesdropper's coupling
// as a fraction of tau^2, and the timing parameters that set the usable
// block length within one channel-coherence window.
struct ScenarioConfig {
  double energy_E = 1e6;  // mean photon number per symbol at the transmitter
  double tau_min = 1e-4;
  double tau_max = 1e-2;
  double eta_sq_fraction_min = 0.02;  // eta^2 / tau^2 lower end
  double eta_sq_fraction_max = 0.2;
  int grid_points = 96;
  double worst_case_eta_fraction = 0.2;  // eta^2 = fraction * tau^2 in sweeps
  double symbol_rate = 1e10;             // baud
  double coherence_window = 1e-2;        // seconds
  double feedback_fraction = 0.5;        // share of the window spent sending

  // Throws config_error naming the offending field.
  void validate() const;
};

// Symbols transmittable in one coherence window:
// floor(symbol_rate * coherence_window * feedback_fraction).
std::uint64_t block_budget(const ScenarioConfig& cfg);

// One sweep grid point. Raw values are the unclipped differences; the
// unsuffixed fields are clipped at zero with the flag recording whether
// clipping fired.
struct SweepRow {
  double E_r = 0.0;  // received mean photon number tau^2 E
  double qq_raw = 0.0, qq = 0.0;
  double cq_raw = 0.0, cq = 0.0;
  double cc_raw = 0.0, cc = 0.0;
  bool clipped_qq = false, clipped_cq = false, clipped_cc = false;
};

// Logarithmic tau grid over [tau_min, tau_max] (endpoints exact); per point
// eta^2 = worst_case_eta_fraction * tau^2. Rows ascend in E_r. Requires
// grid_points >= 2.
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg);

}  // namespace bwc
