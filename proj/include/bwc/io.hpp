#pragma once

#include <string>
#include <vector>

#include "bwc/codesim.hpp"
#include "bwc/scenario.hpp"

namespace bwc {

// Sweep CSV: fixed header
//   E_r,qq_raw,qq,cq_raw,cq,cc_raw,cc,clipped_qq,clipped_cq,clipped_cc
// with numbers at 17 significant digits (round-trip exact for doubles) and
// flags as 0/1.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// Inverse of sweep_to_csv; throws config_error on a malformed header, field
// count, or unparsable number.
std::vector<SweepRow> sweep_from_csv(const std::string& csv);

// Same rows as a JSON array of objects keyed like the CSV columns.
std::string sweep_to_json(const std::vector<SweepRow>& rows);

// Experiment CSV: header
//   tau,eta,M,L,n,E,seed,success,leakage_bits,covering_distance
std::string simulate_to_csv(const std::vector<WiretapCodeReport>& reports);

// Same reports as a JSON array.
std::string simulate_to_json(const std::vector<WiretapCodeReport>& reports);

// Experiment parameters driven by the `simulate` command.
struct SimulateParams {
  std::uint64_t M = 2, L = 2, n = 2;
  double energy_E = 1.0;
  double tau = 0.9;
  double eta = 0.4;
  std::uint64_t seed = 1;
  std::uint64_t seed_count = 1;  // consecutive seeds starting at `seed`
  double prune_delta = 0.0;      // 0 disables typicality pruning
};

// Top-level JSON config: scenario fields at the root plus an optional
// "simulate" object. Unknown keys anywhere are rejected by name.
struct AppConfig {
  ScenarioConfig scenario;
  SimulateParams simulate;
};
AppConfig config_from_json(const std::string& text);

}  // namespace bwc
