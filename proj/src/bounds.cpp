#include "bwc/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bwc/entropy.hpp"

namespace bwc {

namespace {
constexpr double kLn10 = 2.30258509299404568401799145468436421;
}  // namespace

void ProofParams::validate() const {
  if (!(S_sigma >= 0.0) || !(S_sigma_tilde >= 0.0))
    throw std::invalid_argument("proof params: entropies must be >= 0");
  if (!(eps >= 0.0 && eps < 1.0) || !(eps_prime >= 0.0 && eps_prime < 1.0))
    throw std::invalid_argument(
        "proof params: eps and eps_prime must lie in [0,1)");
  if (M_size < 1 || L_size < 1)
    throw std::invalid_argument("proof params: set sizes must be >= 1");
  if (!(d > 0.0) || !(d_tilde > 0.0))
    throw std::invalid_argument("proof params: d and d_tilde must be > 0");
}

double packing_log2_D(const ProofParams& pp, std::uint64_t n, double c_prime,
                      double delta) {
  pp.validate();
  return std::log2(1.0 - pp.eps_prime) +
         static_cast<double>(n) * (pp.S_sigma - c_prime * delta);
}

double covering_log2_D_tilde(const ProofParams& pp, std::uint64_t n,
                             double delta) {
  pp.validate();
  return static_cast<double>(n) * (pp.S_sigma_tilde + delta);
}

PackingBound packing_bound(const ProofParams& pp, std::uint64_t n,
                           double c_prime, double delta) {
  pp.validate();
  if (n < 1) throw std::invalid_argument("packing_bound: n must be >= 1");
  double log2_D = packing_log2_D(pp, n, c_prime, delta);
  if (!(pp.d < std::exp2(log2_D)))
    throw std::invalid_argument(
        "packing_bound: requires d < D, got d = " + std::to_string(pp.d) +
        " with log2(D) = " + std::to_string(log2_D));
  PackingBound b;
  // 4 |M||L| / D, assembled in log2 so 2^{-n S} cannot underflow silently.
  b.log2_codebook_term = 2.0 + std::log2(static_cast<double>(pp.M_size)) +
                         std::log2(static_cast<double>(pp.L_size)) - log2_D;
  b.value = 1.0 - 6.0 * std::sqrt(pp.eps_prime) - std::exp2(b.log2_codebook_term);
  b.value_with_truncation = b.value - 1.0 / static_cast<double>(n);
  b.vacuous = !(b.value > 0.0);
  return b;
}

CoveringBound covering_bound_log2(double eps, double log2_L,
                                  double log2_D_tilde, std::uint64_t n) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("covering_bound: eps must lie in (0,1), got " +
                                std::to_string(eps));
  CoveringBound b;
  b.distance = 30.0 * std::pow(eps, 0.25);
  if (n > 0) b.distance += 1.0 / static_cast<double>(n);
  b.distance_vacuous = b.distance > 2.0;
  // ln[2 D exp(-eps^3 L / (4 D))] = ln 2 + ln(D) - eps^3 L / (4 D); the
  // exponential's argument is assembled from logs to survive L, D far beyond
  // double range.
  double log2_ratio = log2_L - 2.0 - log2_D_tilde;  // log2(L / (4 D))
  double exponent = eps * eps * eps * std::exp2(log2_ratio);
  double ln_failure = kLn2 * (1.0 + log2_D_tilde) - exponent;
  b.log10_failure = ln_failure / kLn10;
  b.failure_probability = std::exp(ln_failure);  // 0 on underflow, by design
  b.failure_vacuous = !(b.failure_probability < 1.0);
  return b;
}

CoveringBound covering_bound(double eps, std::uint64_t L_size, double D_tilde,
                             std::uint64_t n) {
  if (L_size < 1)
    throw std::invalid_argument("covering_bound: L_size must be >= 1");
  if (!(D_tilde > 0.0))
    throw std::invalid_argument("covering_bound: D_tilde must be > 0");
  return covering_bound_log2(eps, std::log2(static_cast<double>(L_size)),
                             std::log2(D_tilde), n);
}

double achievable_rate(double S_bob, double S_eve_worst) {
  if (!(S_bob >= 0.0) || !(S_eve_worst >= 0.0))
    throw std::domain_error("achievable_rate: entropies must be >= 0");
  return S_bob - S_eve_worst;
}

}  // namespace bwc
