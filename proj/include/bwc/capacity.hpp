#pragma once

#include <vector>

namespace bwc {

// Compound-channel parameter sets: tau_set is the legitimate receiver's set
// of amplitude transmissivities S_B, eta_set the wiretapper's set S_E, and
// energy_E the input mean photon number of the BPSK constraint {-sqrt(E),
// +sqrt(E)}.
struct ChannelParamSet {
  std::vector<double> tau_set;
  std::vector<double> eta_set;
  double energy_E = 0.0;
};

// Throws config_error on empty sets, std::domain_error on out-of-range
// entries.
void validate(const ChannelParamSet& params);

// Mean photon number t^2 E arriving behind a pure-loss link of amplitude
// transmissivity t.
double received_photon_number(double t, double E);

// One capacity formula evaluated at its worst case over the parameter sets.
// raw may be negative; value = max(raw, 0). worst_tau and worst_eta are the
// set elements attaining the worst case, ties broken toward the smallest.
struct CapacityEntry {
  double raw = 0.0;
  double value = 0.0;
  bool clipped = false;
  double worst_tau = 0.0;
  double worst_eta = 0.0;
};

struct ClipResult {
  double value;
  bool clipped;
};

ClipResult clip_nonnegative(double raw);

// Both links quantum: min_tau h_bpsk(tau^2 E) - max_eta h_bpsk(eta^2 E).
CapacityEntry qq_capacity(const ChannelParamSet& params);

// Bob restricted to homodyne detection, wiretapper quantum:
// 1 - max_tau h(P_{tau^2 E}) - max_eta h_bpsk(eta^2 E).
CapacityEntry cq_capacity(const ChannelParamSet& params);

// Both links homodyne (a degraded binary-symmetric-channel pair):
// [1 - max_tau h(P_{tau^2 E})] - max_eta [1 - h(P_{eta^2 E})].
CapacityEntry cc_capacity(const ChannelParamSet& params);

struct CapacityReport {
  CapacityEntry qq;
  CapacityEntry cq;
  CapacityEntry cc;
};

CapacityReport capacity_report(const ChannelParamSet& params);

// One sweep point: Bob's set collapses to {tau}; the wiretapper set is the
// base eta_set scaled elementwise by eta_scale.
struct SweepPoint {
  double tau;
  double eta_scale;
};

// Evaluates all three formulas per grid point with the shared worst-case
// convention. Domain errors are rethrown with the offending point index.
std::vector<CapacityReport> capacity_sweep(const ChannelParamSet& base,
                                           const std::vector<SweepPoint>& grid);

}  // namespace bwc
