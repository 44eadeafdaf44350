#include "bwc/codesim.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "bwc/errors.hpp"

namespace bwc {

namespace {

void check_budgets(std::uint64_t M, std::uint64_t L, std::uint64_t n) {
  if (M < 1 || L < 1 || n < 1)
    throw std::invalid_argument("codebook: M, L, n must all be >= 1");
  if (M > kMaxEnsembleStates || L > kMaxEnsembleStates ||
      M * L > kMaxEnsembleStates)
    throw resource_error("codebook: M*L = " + std::to_string(M * L) +
                         " states exceed the ensemble budget of " +
                         std::to_string(kMaxEnsembleStates));
  if (M * L * n > kMaxCodebookEntries)
    throw resource_error("codebook: M*L*n = " + std::to_string(M * L * n) +
                         " entries exceed the budget of " +
                         std::to_string(kMaxCodebookEntries));
}

void check_scale(double scale, const char* name) {
  if (!(scale >= 0.0 && scale <= 1.0))
    throw std::domain_error(std::string(name) +
                            " must lie in [0,1], got " + std::to_string(scale));
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

void Codebook::validate() const {
  check_budgets(M, L, n);
  if (!(energy_E >= 0.0))
    throw std::invalid_argument("codebook: energy must be >= 0");
  if (signs.size() != M * L * n)
    throw std::invalid_argument("codebook: sign array has " +
                                std::to_string(signs.size()) +
                                " entries, expected " +
                                std::to_string(M * L * n));
  for (std::int8_t s : signs)
    if (s != 1 && s != -1)
      throw std::invalid_argument("codebook: signs must be +1 or -1");
}

Codebook sample_codebook(std::uint64_t M, std::uint64_t L, std::uint64_t n,
                         double energy_E, std::uint64_t seed,
                         std::optional<double> prune) {
  check_budgets(M, L, n);
  if (!(energy_E >= 0.0))
    throw std::invalid_argument("codebook: energy must be >= 0");
  if (prune) {
    if (!(*prune > 0.0))
      throw std::invalid_argument("codebook: prune delta must be > 0");
    // A balanced-enough sequence exists iff some integer count k satisfies
    // |k/n - 1/2| <= delta.
    double nd = static_cast<double>(n);
    std::uint64_t lo = static_cast<std::uint64_t>(
        std::ceil(std::max(0.0, nd * (0.5 - *prune) - 1e-12)));
    std::uint64_t hi = static_cast<std::uint64_t>(
        std::floor(std::min(nd, nd * (0.5 + *prune) + 1e-12)));
    if (lo > hi)
      throw std::domain_error(
          "codebook: no length-" + std::to_string(n) +
          " sign sequence is typical for delta = " + std::to_string(*prune));
  }

  Codebook cb;
  cb.M = M;
  cb.L = L;
  cb.n = n;
  cb.energy_E = energy_E;
  cb.seed = seed;
  cb.pruned = prune.has_value();
  cb.prune_delta = prune.value_or(0.0);
  cb.signs.resize(M * L * n);

  std::mt19937_64 rng(seed);
  auto draw_sign = [&rng]() -> std::int8_t {
    return (rng() >> 63) ? std::int8_t(1) : std::int8_t(-1);
  };

  for (std::uint64_t w = 0; w < M * L; ++w) {
    std::int8_t* word = cb.signs.data() + w * n;
    for (;;) {
      std::uint64_t plus = 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        word[i] = draw_sign();
        if (word[i] > 0) ++plus;
      }
      if (!prune) break;
      double dev = std::abs(static_cast<double>(plus) /
                                static_cast<double>(n) -
                            0.5);
      if (dev <= *prune) break;
    }
  }
  return cb;
}

CoherentLabel codeword_label(const Codebook& cb, std::uint64_t m,
                             std::uint64_t l, double scale) {
  if (m >= cb.M || l >= cb.L)
    throw std::domain_error("codeword_label: index (m, l) = (" +
                            std::to_string(m) + ", " + std::to_string(l) +
                            ") out of range");
  CoherentLabel label;
  label.amplitudes.reserve(cb.n);
  double amp = std::sqrt(cb.energy_E);
  for (std::uint64_t i = 0; i < cb.n; ++i)
    label.amplitudes.push_back(scale * (cb.sign(m, l, i) * amp));
  return label;
}

WeightedEnsemble codebook_ensemble(const Codebook& cb, double scale) {
  cb.validate();
  WeightedEnsemble e;
  double w = 1.0 / static_cast<double>(cb.M * cb.L);
  for (std::uint64_t m = 0; m < cb.M; ++m)
    for (std::uint64_t l = 0; l < cb.L; ++l) {
      e.labels.push_back(codeword_label(cb, m, l, scale));
      e.weights.push_back(w);
    }
  return e;
}

WeightedEnsemble message_ensemble(const Codebook& cb, std::uint64_t m,
                                  double scale) {
  cb.validate();
  if (m >= cb.M)
    throw std::domain_error("message_ensemble: message " + std::to_string(m) +
                            " out of range for M = " + std::to_string(cb.M));
  WeightedEnsemble e;
  double w = 1.0 / static_cast<double>(cb.L);
  for (std::uint64_t l = 0; l < cb.L; ++l) {
    e.labels.push_back(codeword_label(cb, m, l, scale));
    e.weights.push_back(w);
  }
  return e;
}

double success_probability(const Codebook& cb, double tau) {
  check_scale(tau, "success_probability: tau");
  WeightedEnsemble e = codebook_ensemble(cb, tau);
  return srm_success(build_gram(e), e.labels.size());
}

double leakage(const Codebook& cb, double eta) {
  check_scale(eta, "leakage: eta");
  double s_bar = ensemble_entropy(build_gram(codebook_ensemble(cb, eta)));
  double s_mean = 0.0;
  for (std::uint64_t m = 0; m < cb.M; ++m)
    s_mean += ensemble_entropy(build_gram(message_ensemble(cb, m, eta)));
  s_mean /= static_cast<double>(cb.M);
  double chi = s_bar - s_mean;
  if (chi < -1e-9)
    throw numeric_error("leakage: Holevo quantity came out " +
                        std::to_string(chi) + ", below the rounding floor");
  return chi > 0.0 ? chi : 0.0;
}

double covering_distance(const Codebook& cb, double eta, std::uint64_t m) {
  check_scale(eta, "covering_distance: eta");
  if (m >= cb.M)
    throw std::domain_error("covering_distance: message " + std::to_string(m) +
                            " out of range for M = " + std::to_string(cb.M));
  return average_state_distance(codebook_ensemble(cb, eta),
                                message_ensemble(cb, m, eta));
}

std::vector<CoveringTrendRow> covering_trend(
    std::uint64_t M, std::uint64_t n, double energy_E, double eta,
    const std::vector<std::uint64_t>& L_list,
    const std::vector<std::uint64_t>& seeds) {
  if (L_list.empty() || seeds.empty())
    throw std::invalid_argument("covering_trend: L_list and seeds must be "
                                "nonempty");
  std::vector<CoveringTrendRow> rows;
  rows.reserve(L_list.size());
  for (std::uint64_t L : L_list) {
    std::vector<double> samples;
    samples.reserve(seeds.size() * M);
    for (std::uint64_t seed : seeds) {
      Codebook cb = sample_codebook(M, L, n, energy_E, seed);
      for (std::uint64_t m = 0; m < M; ++m)
        samples.push_back(covering_distance(cb, eta, m));
    }
    CoveringTrendRow row;
    row.L = L;
    row.mean = mean_of(samples);
    row.stddev = sample_stddev(samples, row.mean);
    rows.push_back(row);
  }
  return rows;
}

std::vector<LeakagePoint> leakage_monotonicity(
    const Codebook& cb, const std::vector<double>& eta_list) {
  if (eta_list.empty())
    throw std::invalid_argument("leakage_monotonicity: empty eta list");
  for (std::size_t i = 1; i < eta_list.size(); ++i)
    if (eta_list[i] < eta_list[i - 1])
      throw std::invalid_argument(
          "leakage_monotonicity: eta list must be ascending");
  std::vector<LeakagePoint> points;
  points.reserve(eta_list.size());
  for (double eta : eta_list)
    points.push_back({eta, leakage(cb, eta)});
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].leakage_bits < points[i - 1].leakage_bits - 1e-9)
      throw property_violation(
          "leakage decreased from " +
          std::to_string(points[i - 1].leakage_bits) + " at eta = " +
          std::to_string(points[i - 1].eta) + " to " +
          std::to_string(points[i].leakage_bits) + " at eta = " +
          std::to_string(points[i].eta));
  return points;
}

WiretapCodeReport run_wiretap_experiment(const Codebook& cb, double tau,
                                         double eta) {
  WiretapCodeReport r;
  r.tau = tau;
  r.eta = eta;
  r.M = cb.M;
  r.L = cb.L;
  r.n = cb.n;
  r.energy_E = cb.energy_E;
  r.seed = cb.seed;
  r.success = success_probability(cb, tau);
  r.leakage_bits = leakage(cb, eta);
  double d = 0.0;
  for (std::uint64_t m = 0; m < cb.M; ++m)
    d += covering_distance(cb, eta, m);
  r.covering_distance = d / static_cast<double>(cb.M);
  return r;
}

}  // namespace bwc
