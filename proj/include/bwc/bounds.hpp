#pragma once

#include <cstdint>

namespace bwc {

// Parameters of the random-coding probability bounds. Entropies are in bits.
// In the pure-state instantiation the minimal per-state weights are
// d = d_tilde = 1, the defaults.
struct ProofParams {
  double S_sigma = 0.0;        // receiver-side average-state entropy
  double S_sigma_tilde = 0.0;  // eavesdropper-side average-state entropy
  double eps = 0.0;            // typicality confidence for covering
  double eps_prime = 0.0;      // typicality confidence for packing
  std::uint64_t M_size = 1;    // messages
  std::uint64_t L_size = 1;    // obfuscation indices per message
  double d = 1.0;
  double d_tilde = 1.0;

  // Throws std::invalid_argument unless entropies >= 0, eps and eps_prime in
  // [0,1), sizes >= 1, d and d_tilde > 0.
  void validate() const;
};

// log2 of the distinguishability-space size D = (1-eps') 2^{n(S - c' delta)}
// entering the packing bound. Kept in log2 form: D itself overflows a double
// once n S passes ~1024 bits.
double packing_log2_D(const ProofParams& pp, std::uint64_t n, double c_prime,
                      double delta);

// log2 of D_tilde = 2^{n(S_tilde + delta)} entering the covering bound.
double covering_log2_D_tilde(const ProofParams& pp, std::uint64_t n,
                             double delta);

// Guaranteed expected success probability of the square-root decoder over a
// random codebook:
//   1 - 6 sqrt(eps') - 4 |M||L| / ((1-eps') 2^{n(S - c' delta)}),
// computed in log space. `value_with_truncation` subtracts the extra 1/n
// incurred when the states are first replaced by finite-support
// approximations. A bound <= 0 is reported with `vacuous` set, never
// clipped.
struct PackingBound {
  double value = 0.0;
  double value_with_truncation = 0.0;
  double log2_codebook_term = 0.0;  // log2 of the subtracted 4|M||L|/D term
  bool vacuous = false;
};
PackingBound packing_bound(const ProofParams& pp, std::uint64_t n,
                           double c_prime, double delta);

// Random-covering guarantee: with probability at least
// 1 - 2 D_tilde exp(-eps^3 |L| / (4 D_tilde)), the fake average over |L|
// states is within 30 eps^{1/4} (plus 1/n when n > 0 is given) of the true
// average in trace norm. Failure probability is computed in log space;
// values below the double floor are reported as 0 with log10_failure still
// exact. Vacuous guarantees (distance > 2, or failure >= 1) are flagged,
// never clipped.
struct CoveringBound {
  double distance = 0.0;
  bool distance_vacuous = false;
  double failure_probability = 0.0;
  double log10_failure = 0.0;
  bool failure_vacuous = false;
};
CoveringBound covering_bound(double eps, std::uint64_t L_size, double D_tilde,
                             std::uint64_t n = 0);

// Same, but with the covering space size given as log2(D_tilde) so block
// lengths beyond double range stay representable.
CoveringBound covering_bound_log2(double eps, double log2_L, double log2_D_tilde,
                                  std::uint64_t n = 0);

// Rate S_bob - S_eve_worst in bits; not clipped (clipping to zero is the
// capacity layer's concern). Both inputs must be >= 0.
double achievable_rate(double S_bob, double S_eve_worst);

}  // namespace bwc
