#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bwc/gram.hpp"

namespace bwc {

// Cap on ensemble states entering one Gram computation (cubic
// eigendecomposition cost).
inline constexpr std::uint64_t kMaxEnsembleStates = 512;
// Cap on total sign entries in one codebook.
inline constexpr std::uint64_t kMaxCodebookEntries = std::uint64_t(1) << 20;

// Random BPSK codebook: M messages, L obfuscation indices per message, n
// symbols per codeword. The codeword for (m, l) carries amplitudes
// signs[m,l,i] * sqrt(energy_E), to be scaled by a transmissivity at use.
struct Codebook {
  std::vector<std::int8_t> signs;  // flat M*L*n, entries +1 / -1
  std::uint64_t M = 0, L = 0, n = 0;
  double energy_E = 0.0;
  std::uint64_t seed = 0;
  bool pruned = false;
  double prune_delta = 0.0;

  int sign(std::uint64_t m, std::uint64_t l, std::uint64_t i) const {
    return signs[(m * L + l) * n + i];
  }
  // Throws std::invalid_argument for shape/entry violations, resource_error
  // when the ensemble or entry budget is exceeded.
  void validate() const;
};

// Draws a codebook from a seeded mt19937_64: each sign is +1 iff the top bit
// of the next generator output is set. The generator is pinned by its
// standardized algorithm, so identical inputs reproduce identical codebooks
// on any conforming platform. With `prune` set, each codeword is redrawn
// until it is strongly prune-typical for the uniform sign distribution
// (near-balanced); throws std::domain_error when no length-n sequence can
// qualify (delta below 1/(2n) with n odd).
Codebook sample_codebook(std::uint64_t M, std::uint64_t L, std::uint64_t n,
                         double energy_E, std::uint64_t seed,
                         std::optional<double> prune = std::nullopt);

// Label of codeword (m, l) with every amplitude multiplied by `scale`.
CoherentLabel codeword_label(const Codebook& cb, std::uint64_t m,
                             std::uint64_t l, double scale);

// All M*L codewords at `scale`, weights 1/(M*L).
WeightedEnsemble codebook_ensemble(const Codebook& cb, double scale);

// The L codewords of message m at `scale`, weights 1/L.
WeightedEnsemble message_ensemble(const Codebook& cb, std::uint64_t m,
                                  double scale);

// Success probability of the square-root measurement distinguishing all M*L
// codewords (the decoder resolves the pair (m, l)) with the channel fixed at
// transmissivity tau.
double success_probability(const Codebook& cb, double tau);

// Holevo quantity of the eavesdropper's per-message ensemble at
// transmissivity eta: S(average over all codewords) minus the mean over
// messages of S(average over that message's L codewords). In bits.
// Negative values beyond -1e-9 raise numeric_error; tiny negative rounding
// is clamped to 0.
double leakage(const Codebook& cb, double eta);

// Trace distance between the eavesdropper's all-codeword average state and
// the message-m average state at transmissivity eta.
double covering_distance(const Codebook& cb, double eta, std::uint64_t m);

// Mean and sample standard deviation of covering_distance over messages and
// seeds, per L.
struct CoveringTrendRow {
  std::uint64_t L = 0;
  double mean = 0.0;
  double stddev = 0.0;
};
std::vector<CoveringTrendRow> covering_trend(
    std::uint64_t M, std::uint64_t n, double energy_E, double eta,
    const std::vector<std::uint64_t>& L_list,
    const std::vector<std::uint64_t>& seeds);

// Leakage per eta for an ascending grid; throws std::invalid_argument if the
// grid is unsorted and property_violation (carrying the offending pair) if
// the sequence decreases by more than 1e-9.
struct LeakagePoint {
  double eta = 0.0;
  double leakage_bits = 0.0;
};
std::vector<LeakagePoint> leakage_monotonicity(
    const Codebook& cb, const std::vector<double>& eta_list);

// One full experiment at fixed (tau, eta): SRM success, leakage, and the
// covering distance averaged over messages.
struct WiretapCodeReport {
  double tau = 0.0;
  double eta = 0.0;
  std::uint64_t M = 0, L = 0, n = 0;
  double energy_E = 0.0;
  std::uint64_t seed = 0;
  double success = 0.0;
  double leakage_bits = 0.0;
  double covering_distance = 0.0;
};
WiretapCodeReport run_wiretap_experiment(const Codebook& cb, double tau,
                                         double eta);

}  // namespace bwc
