#include "bwc/typicality.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bwc/errors.hpp"

namespace bwc {

namespace {

// K^n with an early exit once the cap is exceeded.
void check_enumeration_size(std::size_t alphabet, std::size_t n,
                            std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / alphabet)
      throw resource_error("typical-set enumeration needs " +
                           std::to_string(alphabet) + "^" + std::to_string(n) +
                           " sequences, above the cap of " +
                           std::to_string(cap));
    total *= alphabet;
    if (total > cap)
      throw resource_error("typical-set enumeration needs " +
                           std::to_string(alphabet) + "^" + std::to_string(n) +
                           " sequences, above the cap of " +
                           std::to_string(cap));
  }
}

// Typicality test on a symbol-count histogram.
bool counts_typical(const std::vector<std::uint32_t>& counts,
                    const FiniteDistribution& p, std::size_t n, double delta) {
  for (std::size_t x = 0; x < p.probs.size(); ++x) {
    if (p.probs[x] == 0.0) {
      if (counts[x] != 0) return false;
      continue;
    }
    double dev = static_cast<double>(counts[x]) / static_cast<double>(n) -
                 p.probs[x];
    if (std::abs(dev) > delta) return false;
  }
  return true;
}

// log2 p(xn) from the histogram; requires counts to be zero outside the
// support (guaranteed for typical sequences).
double log2_sequence_prob(const std::vector<std::uint32_t>& counts,
                          const FiniteDistribution& p) {
  double s = 0.0;
  for (std::size_t x = 0; x < p.probs.size(); ++x)
    if (counts[x] > 0) s += counts[x] * std::log2(p.probs[x]);
  return s;
}

// Visits every sequence in lexicographic order, maintaining the symbol
// histogram incrementally.
template <typename Visit>
void for_each_sequence(std::size_t alphabet, std::size_t n, Visit&& visit) {
  std::vector<int> seq(n, 0);
  std::vector<std::uint32_t> counts(alphabet, 0);
  counts[0] = static_cast<std::uint32_t>(n);
  for (;;) {
    visit(seq, counts);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      --counts[seq[pos]];
      if (seq[pos] + 1 < static_cast<int>(alphabet)) {
        ++seq[pos];
        ++counts[seq[pos]];
        break;
      }
      seq[pos] = 0;
      ++counts[0];
      if (pos == 0) return;  // odometer wrapped
    }
  }
}

double resolved_c(const FiniteDistribution& p, const TypicalityParams& params) {
  return params.c > 0.0 ? params.c : default_typicality_c(p);
}

}  // namespace

void FiniteDistribution::validate() const {
  if (probs.empty())
    throw std::invalid_argument("distribution: alphabet must be nonempty");
  double sum = 0.0;
  for (double q : probs) {
    if (!(q >= 0.0))
      throw std::invalid_argument(
          "distribution: probabilities must be >= 0, got " +
          std::to_string(q));
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("distribution: probabilities sum to " +
                                std::to_string(sum) + ", not 1");
}

std::size_t FiniteDistribution::support_size() const {
  std::size_t k = 0;
  for (double q : probs)
    if (q > 0.0) ++k;
  return k;
}

void TypicalityParams::validate() const {
  if (n < 1) throw std::invalid_argument("typicality: n must be >= 1");
  if (!(delta > 0.0))
    throw std::invalid_argument("typicality: delta must be > 0, got " +
                                std::to_string(delta));
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("typicality: eps must lie in [0,1), got " +
                                std::to_string(eps));
  if (!(c >= 0.0))
    throw std::invalid_argument("typicality: c must be >= 0, got " +
                                std::to_string(c));
}

double default_typicality_c(const FiniteDistribution& p) {
  p.validate();
  double c = 0.0;
  for (double q : p.probs)
    if (q > 0.0) c += std::log2(1.0 / q);
  return c;
}

double chernoff_eps(const FiniteDistribution& p, std::size_t n, double delta) {
  p.validate();
  if (n < 1 || !(delta > 0.0))
    throw std::invalid_argument("chernoff_eps: need n >= 1 and delta > 0");
  double raw = 2.0 * static_cast<double>(p.support_size()) *
               std::exp(-2.0 * static_cast<double>(n) * delta * delta);
  return raw < 1.0 ? raw : 1.0;
}

double shannon_entropy(const FiniteDistribution& p) {
  p.validate();
  double h = 0.0;
  for (double q : p.probs)
    if (q > 0.0) h -= q * std::log2(q);
  return h;
}

bool is_strongly_typical(const std::vector<int>& xn,
                         const FiniteDistribution& p,
                         const TypicalityParams& params) {
  p.validate();
  params.validate();
  if (xn.size() != params.n)
    throw std::domain_error("is_strongly_typical: sequence length " +
                            std::to_string(xn.size()) +
                            " does not match n = " + std::to_string(params.n));
  std::vector<std::uint32_t> counts(p.probs.size(), 0);
  for (int x : xn) {
    if (x < 0 || static_cast<std::size_t>(x) >= p.probs.size())
      throw std::domain_error("is_strongly_typical: symbol " +
                              std::to_string(x) + " outside the alphabet");
    ++counts[x];
  }
  return counts_typical(counts, p, params.n, params.delta);
}

std::vector<std::vector<int>> typical_set(const FiniteDistribution& p,
                                          const TypicalityParams& params,
                                          std::uint64_t cap) {
  p.validate();
  params.validate();
  check_enumeration_size(p.probs.size(), params.n, cap);
  std::vector<std::vector<int>> out;
  for_each_sequence(p.probs.size(), params.n,
                    [&](const std::vector<int>& seq,
                        const std::vector<std::uint32_t>& counts) {
                      if (counts_typical(counts, p, params.n, params.delta))
                        out.push_back(seq);
                    });
  return out;
}

TypicalSetSummary typical_set_summary(const FiniteDistribution& p,
                                      const TypicalityParams& params,
                                      std::uint64_t cap) {
  p.validate();
  params.validate();
  check_enumeration_size(p.probs.size(), params.n, cap);
  TypicalSetSummary s;
  for_each_sequence(p.probs.size(), params.n,
                    [&](const std::vector<int>&,
                        const std::vector<std::uint32_t>& counts) {
                      if (counts_typical(counts, p, params.n, params.delta)) {
                        ++s.count;
                        s.probability += std::exp2(log2_sequence_prob(counts, p));
                      }
                    });
  return s;
}

PrunedDistribution pruned_distribution(const FiniteDistribution& p,
                                       const TypicalityParams& params,
                                       std::uint64_t cap) {
  p.validate();
  params.validate();
  check_enumeration_size(p.probs.size(), params.n, cap);
  PrunedDistribution out;
  for_each_sequence(p.probs.size(), params.n,
                    [&](const std::vector<int>& seq,
                        const std::vector<std::uint32_t>& counts) {
                      if (counts_typical(counts, p, params.n, params.delta)) {
                        out.sequences.push_back(seq);
                        out.probs.push_back(
                            std::exp2(log2_sequence_prob(counts, p)));
                        out.xi += out.probs.back();
                      }
                    });
  if (out.sequences.empty())
    throw std::domain_error(
        "pruned_distribution: the typical set is empty for n = " +
        std::to_string(params.n) + ", delta = " + std::to_string(params.delta));
  for (double& q : out.probs) q /= out.xi;
  return out;
}

SubspaceDims typical_subspace_dims(const FiniteDistribution& spectrum,
                                   const TypicalityParams& params,
                                   std::uint64_t cap) {
  TypicalSetSummary s = typical_set_summary(spectrum, params, cap);
  SubspaceDims d;
  d.dimension = s.count;
  d.log2_bound = static_cast<double>(params.n) *
                 (shannon_entropy(spectrum) +
                  resolved_c(spectrum, params) * params.delta);
  d.within_bound =
      std::log2(static_cast<double>(d.dimension == 0 ? 1 : d.dimension)) <=
      d.log2_bound + 1e-9;
  return d;
}

CardinalityBounds cardinality_bounds(const FiniteDistribution& p,
                                     const TypicalityParams& params) {
  p.validate();
  params.validate();
  CardinalityBounds b;
  b.c_used = resolved_c(p, params);
  b.eps_used =
      params.eps > 0.0 ? params.eps : chernoff_eps(p, params.n, params.delta);
  double h = shannon_entropy(p);
  double n = static_cast<double>(params.n);
  b.log2_upper = n * (h + b.c_used * params.delta);
  if (b.eps_used >= 1.0)
    b.log2_lower = -std::numeric_limits<double>::infinity();
  else
    b.log2_lower = std::log2(1.0 - b.eps_used) + n * (h - b.c_used * params.delta);
  return b;
}

}  // namespace bwc
