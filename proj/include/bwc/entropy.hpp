#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bwc {

inline constexpr double kLn2 = 0.69314718055994530941723212145817657;

// Binary entropy in bits, h(0) = h(1) = 0 by continuity.
// Evaluated on q = min(p, 1-p), so h(p) and h(1-p) are the same floating-point
// expression whenever 1-p is exact (always the case for p >= 1/2).
template <typename Real = double>
Real binary_entropy(Real p) {
  if (!(p >= Real(0) && p <= Real(1)))
    throw std::domain_error("binary_entropy: p must lie in [0,1], got " +
                            std::to_string(static_cast<double>(p)));
  Real q = p < Real(0.5) ? p : Real(1) - p;
  if (q == Real(0)) return Real(0);
  using std::log1p;
  using std::log2;
  return -(q * log2(q) + (Real(1) - q) * (log1p(-q) / Real(kLn2)));
}

// Entropy of the equal-prior BPSK coherent-state pair at mean photon number
// nbar: the average state has eigenvalues (1 +- e^{-2 nbar})/2, so the value
// is h((1 + e^{-2 nbar})/2). This form never overflows.
template <typename Real = double>
Real h_bpsk(Real nbar) {
  if (!(nbar >= Real(0)))
    throw std::domain_error("h_bpsk: nbar must be >= 0, got " +
                            std::to_string(static_cast<double>(nbar)));
  using std::exp;
  return binary_entropy(Real(0.5) * (Real(1) + exp(Real(-2) * nbar)));
}

// Same quantity via h(cosh(nbar) e^{-nbar}). cosh overflows near nbar = 710,
// so this route exists only as an independent check of h_bpsk; the product is
// clamped at 1 to absorb the final rounding at tiny nbar.
template <typename Real = double>
Real h_bpsk_cosh_form(Real nbar) {
  if (!(nbar >= Real(0)))
    throw std::domain_error("h_bpsk_cosh_form: nbar must be >= 0, got " +
                            std::to_string(static_cast<double>(nbar)));
  using std::cosh;
  using std::exp;
  Real p = cosh(nbar) * exp(-nbar);
  if (p > Real(1)) p = Real(1);
  return binary_entropy(p);
}

// Homodyne-detection error probability for BPSK at mean photon number nbar,
// (1 - Erf(sqrt(2 nbar)))/2 = erfc(sqrt(2 nbar))/2. Strictly decreasing,
// 1/2 at nbar = 0.
template <typename Real = double>
Real homodyne_error(Real nbar) {
  if (!(nbar >= Real(0)))
    throw std::domain_error("homodyne_error: nbar must be >= 0, got " +
                            std::to_string(static_cast<double>(nbar)));
  using std::erfc;
  using std::sqrt;
  return Real(0.5) * erfc(sqrt(Real(2) * nbar));
}

// Bound h(eps) + E h(eps/E) on the entropy difference of two states of energy
// at most E whose trace distance is 2 eps; valid for eps <= E/(1+E).
template <typename Real = double>
Real entropy_continuity_bound(Real eps, Real E) {
  if (!(eps >= Real(0) && eps <= Real(1)))
    throw std::domain_error("entropy_continuity_bound: eps must lie in [0,1]");
  if (!(E >= Real(0)))
    throw std::domain_error("entropy_continuity_bound: E must be >= 0");
  Real limit = E / (Real(1) + E);
  if (eps > limit)
    throw std::domain_error(
        "entropy_continuity_bound: eps exceeds the validity limit E/(1+E) = " +
        std::to_string(static_cast<double>(limit)));
  if (eps == Real(0)) return Real(0);
  return binary_entropy(eps) + E * binary_entropy(eps / E);
}

// Shannon entropy in bits of a probability vector; zero entries contribute
// nothing. Entries must be nonnegative (normalization is the caller's
// contract, not checked here so partial sums can be scored too).
template <typename Real = double>
Real shannon_entropy_bits(const std::vector<Real>& probs) {
  using std::log2;
  Real h = 0;
  for (Real p : probs) {
    if (!(p >= Real(0)))
      throw std::domain_error(
          "shannon_entropy_bits: probabilities must be >= 0, got " +
          std::to_string(static_cast<double>(p)));
    if (p > Real(0)) h -= p * log2(p);
  }
  return h;
}

// Sample entropy -(1/n) sum_i log2 p(x_i); symbols are indices into probs.
template <typename Real = double>
Real sample_entropy(const std::vector<std::size_t>& xn,
                    const std::vector<Real>& probs) {
  if (xn.empty()) throw std::invalid_argument("sample_entropy: empty sequence");
  using std::log2;
  Real sum = 0;
  for (std::size_t x : xn) {
    if (x >= probs.size())
      throw std::domain_error("sample_entropy: symbol index " +
                              std::to_string(x) + " outside the alphabet");
    if (!(probs[x] > Real(0)))
      throw std::domain_error("sample_entropy: zero-probability symbol " +
                              std::to_string(x) + " in sequence");
    sum += log2(probs[x]);
  }
  return -sum / Real(xn.size());
}

}  // namespace bwc
