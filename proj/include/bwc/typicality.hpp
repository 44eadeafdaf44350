#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bwc {

// Probability distribution over the alphabet {0, 1, ..., K-1}; symbols are
// the indices. Consumers that work with sign alphabets map +1 -> 0, -1 -> 1.
struct FiniteDistribution {
  std::vector<double> probs;

  // Throws std::invalid_argument unless nonempty, entries >= 0, and the sum
  // is 1 within 1e-12.
  void validate() const;
  std::size_t alphabet_size() const { return probs.size(); }
  // Number of symbols with positive probability.
  std::size_t support_size() const;
};

// Parameters of a delta-strongly-typical set over n-symbol sequences.
//
// A sequence xn is delta-strongly typical for p when every symbol x satisfies
// |N(x|xn)/n - p(x)| <= delta, and additionally N(x|xn) = 0 whenever
// p(x) = 0.
//
// `eps` is the confidence used in the cardinality lower bound
// (1-eps) 2^{n(H-c delta)}; pass 0 to have evaluators substitute a Chernoff
// value. `c` is the cardinality constant; 0 means "use
// default_typicality_c(p)".
struct TypicalityParams {
  std::size_t n = 1;
  double delta = 0.0;
  double eps = 0.0;
  double c = 0.0;

  // Throws std::invalid_argument unless n >= 1, delta > 0, eps in [0,1),
  // c >= 0.
  void validate() const;
};

// Cardinality constant c = sum over the support of log2(1/p(x)). For any
// typical sequence, |-(1/n) log2 p(xn) - H(p)| <= c*delta, which yields both
// cardinality bounds below; this is the tightest constant of that argument.
double default_typicality_c(const FiniteDistribution& p);

// Union-of-Hoeffding bound on the probability that an i.i.d. p-sequence is
// NOT typical: min(1, 2*support_size*exp(-2 n delta^2)).
double chernoff_eps(const FiniteDistribution& p, std::size_t n, double delta);

// Shannon entropy H(p) in bits.
double shannon_entropy(const FiniteDistribution& p);

// Membership test; also the oracle used for rejection sampling above the
// enumeration cap. Throws std::domain_error for symbols outside the alphabet
// or a sequence whose length differs from params.n.
bool is_strongly_typical(const std::vector<int>& xn,
                         const FiniteDistribution& p,
                         const TypicalityParams& params);

// Exhaustive enumeration is for verification at small n only; K^n above the
// cap is a resource_error.
inline constexpr std::uint64_t kEnumerationCap = std::uint64_t(1) << 20;

// All typical sequences in lexicographic order. Materializes the set; use
// typical_set_summary when only the count and mass are needed.
std::vector<std::vector<int>> typical_set(
    const FiniteDistribution& p, const TypicalityParams& params,
    std::uint64_t cap = kEnumerationCap);

// Streaming census of the typical set: cardinality and total probability
// mass xi = Pr{X^n typical}.
struct TypicalSetSummary {
  std::uint64_t count = 0;
  double probability = 0.0;
};
TypicalSetSummary typical_set_summary(const FiniteDistribution& p,
                                      const TypicalityParams& params,
                                      std::uint64_t cap = kEnumerationCap);

// Conditional distribution of X^n given typicality: support is exactly the
// typical set, probabilities p(xn)/xi. Throws std::domain_error when the
// typical set is empty.
struct PrunedDistribution {
  std::vector<std::vector<int>> sequences;
  std::vector<double> probs;
  double xi = 0.0;
};
PrunedDistribution pruned_distribution(const FiniteDistribution& p,
                                       const TypicalityParams& params,
                                       std::uint64_t cap = kEnumerationCap);

// Dimension of the typical subspace of a state with the given spectrum: the
// number of eigenbasis sequences typical for the eigenvalue distribution,
// together with the 2^{n(S + c delta)} dimension bound it must satisfy.
struct SubspaceDims {
  std::uint64_t dimension = 0;
  double log2_bound = 0.0;
  bool within_bound = false;
};
SubspaceDims typical_subspace_dims(const FiniteDistribution& spectrum,
                                   const TypicalityParams& params,
                                   std::uint64_t cap = kEnumerationCap);

// The two-sided cardinality bounds
//   (1-eps) 2^{n(H - c delta)} <= |T_delta| <= 2^{n(H + c delta)}
// reported as log2 values (lower is -inf when eps >= 1). eps and c come from
// params, with 0 meaning the Chernoff/default substitutions.
struct CardinalityBounds {
  double log2_lower = 0.0;
  double log2_upper = 0.0;
  double c_used = 0.0;
  double eps_used = 0.0;
};
CardinalityBounds cardinality_bounds(const FiniteDistribution& p,
                                     const TypicalityParams& params);

}  // namespace bwc
