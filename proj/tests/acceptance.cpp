// Acceptance gate: twelve numbered criteria, one line of output each.
// Every tolerance and runtime limit is pinned here, next to the check it
// governs. The binary exits 0 only if all twelve pass; the final argument
// names the command-line binary exercised by criterion 12.

#include <sys/wait.h>

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bwc/bounds.hpp"
#include "bwc/capacity.hpp"
#include "bwc/codesim.hpp"
#include "bwc/entropy.hpp"
#include "bwc/errors.hpp"
#include "bwc/fock.hpp"
#include "bwc/gram.hpp"
#include "bwc/io.hpp"
#include "bwc/scenario.hpp"
#include "bwc/typicality.hpp"

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

// ---- shared random-state constructions (seeded, platform-pinned RNG) ----

bwc::FockOperator random_density(int cutoff, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  int d = cutoff + 1;
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = bwc::Complex(g(rng), g(rng));
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  return {rho, cutoff, 1};
}

bwc::FockOperator random_measurement(int cutoff, std::mt19937_64& rng) {
  bwc::FockOperator base = random_density(cutoff, rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(base.m);
  Eigen::VectorXd lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    lam(i) = 1.0 / (1.0 + std::exp(-40.0 * (lam(i) - 0.05)));
  return {es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint(),
          cutoff, 1};
}

// ---- criterion 1: the two closed forms of the pair entropy agree ----

Outcome dual_route_identity() {
  constexpr double kTol = 1e-12;
  constexpr int kPoints = 1000;
  double worst = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    double x = 50.0 * i / double(kPoints - 1);
    worst = std::max(worst,
                     std::abs(bwc::h_bpsk(x) - bwc::h_bpsk_cosh_form(x)));
  }
  return {worst <= kTol, "max deviation " + fmt(worst) + " over " +
                             std::to_string(kPoints) + " points in [0,50]"};
}

// ---- criterion 2: square-root measurement is optimal for two states ----

Outcome two_codeword_optimality() {
  constexpr double kTol = 1e-10;
  double worst = 0.0;
  for (double E : {0.1, 0.5, 1.0, 2.0}) {
    bwc::WeightedEnsemble pair{{{{std::sqrt(E)}}, {{-std::sqrt(E)}}},
                               {0.5, 0.5}};
    double p = bwc::srm_success(bwc::build_gram(pair), 2);
    double best = 0.5 * (1.0 + std::sqrt(1.0 - std::exp(-4.0 * E)));
    worst = std::max(worst, std::abs(p - best));
  }
  return {worst <= kTol,
          "max deviation " + fmt(worst) + " from the two-state optimum"};
}

// ---- criterion 3: overlap route vs number-basis route on codebooks ----

Outcome oracle_equivalence() {
  constexpr double kTol = 1e-6;
  constexpr int kCutoff = 40;
  constexpr int kSeedsPerShape = 3;
  double worst = 0.0;
  int evaluated = 0;
  std::vector<std::pair<int, int>> ml_pairs;
  for (int M = 1; M <= 8; ++M)
    for (int L = 1; M * L <= 8; ++L) ml_pairs.emplace_back(M, L);

  int shape_index = 0;
  for (int n = 1; n <= 3; ++n) {
    for (auto [M, L] : ml_pairs) {
      for (int s = 0; s < kSeedsPerShape; ++s) {
        std::uint64_t seed = 9100 + 57 * std::uint64_t(shape_index) + s;
        for (double E : {0.25, 1.0}) {
          bwc::Codebook cb = bwc::sample_codebook(M, L, n, E, seed);
          bwc::WeightedEnsemble full = bwc::codebook_ensemble(cb, 1.0);
          bwc::WeightedEnsemble msg = bwc::message_ensemble(cb, 0, 1.0);

          Eigen::MatrixXcd gram = bwc::build_gram(full);
          double h_gram = bwc::ensemble_entropy(gram);
          double p_gram = bwc::srm_success(gram, M * L);
          double d_gram = bwc::average_state_distance(full, msg);

          double h_num, p_num, d_num;
          if (n == 1) {
            // Dense operators fit comfortably at one mode.
            std::vector<bwc::FockVector> states;
            for (const auto& lab : full.labels)
              states.push_back(bwc::product_vector(lab, kCutoff));
            h_num = bwc::von_neumann_entropy(
                bwc::density_from_ensemble(full, kCutoff));
            p_num = bwc::srm_povm_success(states);
            d_num = bwc::trace_norm_distance(
                bwc::density_from_ensemble(full, kCutoff),
                bwc::density_from_ensemble(msg, kCutoff));
          } else {
            // Beyond one mode, work in the span of the stacked vectors.
            std::vector<bwc::FockVector> states, msg_states;
            for (const auto& lab : full.labels)
              states.push_back(bwc::product_vector(lab, kCutoff));
            for (const auto& lab : msg.labels)
              msg_states.push_back(bwc::product_vector(lab, kCutoff));
            h_num = bwc::ensemble_entropy_vectors(states, full.weights);
            p_num = bwc::srm_success_vectors(states);
            d_num = bwc::average_distance_vectors(states, full.weights,
                                                  msg_states, msg.weights);
          }
          worst = std::max({worst, std::abs(h_gram - h_num),
                            std::abs(p_gram - p_num),
                            std::abs(d_gram - d_num)});
          ++evaluated;
        }
      }
      ++shape_index;
    }
  }
  return {worst <= kTol, std::to_string(evaluated) +
                             " codebook evaluations, max deviation " +
                             fmt(worst)};
}

// ---- criterion 4: truncation tail guarantee at and above threshold ----

Outcome truncation_tail_guarantee() {
  bool ok = true;
  std::string note;
  for (double nbar : {0.5, 1.0, 2.0}) {
    int base = int(std::ceil(8.0 * std::exp(1.0) * nbar)) + 1;
    for (int N : {base, base + 10}) {
      auto t = bwc::tail_probability(std::sqrt(nbar), N);
      if (!t.precondition || !t.satisfied) {
        ok = false;
        note = "failed at photon number " + fmt(nbar) + ", cutoff " +
               std::to_string(N);
      }
    }
  }
  if (ok) note = "tail <= 2^{-N-1} at six (photon number, cutoff) points";
  return {ok, note};
}

// ---- criterion 5: entropy continuity under trace-norm perturbation ----

Outcome entropy_continuity_property() {
  constexpr int kPairs = 100;
  constexpr int kMaxAttempts = 140;
  std::mt19937_64 rng(24680);
  std::uniform_real_distribution<double> mix(0.0, 0.5);
  int evaluated = 0, violations = 0;
  for (int a = 0; a < kMaxAttempts && evaluated < kPairs; ++a) {
    bwc::FockOperator rho = random_density(8, rng);
    bwc::FockOperator other = random_density(8, rng);
    double t = mix(rng);
    bwc::FockOperator sigma{(1.0 - t) * rho.m + t * other.m, 8, 1};
    double eps = 0.5 * bwc::trace_norm_distance(rho, sigma);
    double E = std::max(bwc::photon_number_expectation(rho),
                        bwc::photon_number_expectation(sigma));
    if (eps == 0.0 || eps > E / (1.0 + E)) continue;
    ++evaluated;
    double gap =
        std::abs(bwc::von_neumann_entropy(rho) - bwc::von_neumann_entropy(sigma));
    if (gap > bwc::entropy_continuity_bound(eps, E)) ++violations;
  }
  return {evaluated == kPairs && violations == 0,
          std::to_string(evaluated) + " pairs evaluated, " +
              std::to_string(violations) + " violations"};
}

// ---- criterion 6: measurement substitution under trace-norm slack ----

Outcome measurement_substitution_property() {
  constexpr int kTriples = 100;
  constexpr double kSlack = 1e-10;
  std::mt19937_64 rng(13579);
  int violations = 0;
  for (int k = 0; k < kTriples; ++k) {
    bwc::FockOperator lambda_op = random_measurement(9, rng);
    bwc::FockOperator rho = random_density(9, rng);
    bwc::FockOperator sigma = random_density(9, rng);
    if (!bwc::check_finite_support_lemma(lambda_op, rho, sigma, kSlack))
      ++violations;
  }
  return {violations == 0, std::to_string(kTriples) + " triples, " +
                               std::to_string(violations) + " violations"};
}

// ---- criterion 7: the default sweep orders the three capacities ----

Outcome sweep_capacity_ordering() {
  constexpr double kTol = 1e-12;
  bwc::ScenarioConfig cfg;
  auto rows = bwc::run_sweep(cfg);
  if (rows.size() < 64)
    return {false, "sweep produced only " + std::to_string(rows.size()) +
                       " points"};
  bool ordered = true;
  bool gap_point = false;
  for (const auto& r : rows) {
    if (r.qq_raw < r.cq_raw - kTol || r.cc_raw < r.cq_raw - kTol)
      ordered = false;
    if (r.clipped_cq && r.cq == 0.0 && r.qq > 0.0) gap_point = true;
  }
  return {ordered && gap_point,
          std::string(ordered ? "ordering holds" : "ordering violated") +
              " on " + std::to_string(rows.size()) + " points; quantum-only " +
              (gap_point ? "gap point present" : "gap point missing")};
}

// ---- criterion 8: parameter-set singletons collapse to closed forms ----

Outcome singleton_reduction() {
  constexpr double kLeakTol = 1e-10;
  bool exact = true;
  for (auto [tau, eta, E] : {std::tuple{0.5, 0.2, 1.0},
                             std::tuple{0.3, 0.14, 2.5}}) {
    bwc::ChannelParamSet s{{tau}, {eta}, E};
    double rate = bwc::achievable_rate(
        bwc::h_bpsk(bwc::received_photon_number(tau, E)),
        bwc::h_bpsk(bwc::received_photon_number(eta, E)));
    if (bwc::capacity_report(s).qq.raw != rate) exact = false;
  }

  // Two antipodal codewords, one symbol, no obfuscation: the wiretapper's
  // Holevo quantity is exactly the pair entropy at her photon number.
  bwc::Codebook cb;
  cb.M = 2;
  cb.L = 1;
  cb.n = 1;
  cb.energy_E = 1.0;
  cb.signs = {+1, -1};
  double eta = 0.6;
  double chi = bwc::leakage(cb, eta);
  double expect = bwc::h_bpsk(eta * eta * cb.energy_E);
  bool leak_ok = std::abs(chi - expect) <= kLeakTol;
  return {exact && leak_ok,
          std::string(exact ? "rate identity exact" : "rate identity broken") +
              "; two-codeword leakage deviation " + fmt(std::abs(chi - expect))};
}

// ---- criterion 9: leakage monotone in eta, covering trend monotone in L ----

Outcome monotonicity_suite() {
  constexpr double kTrendSlack = 1e-12;
  const std::vector<double> eta_grid{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  const std::vector<std::tuple<int, int, int>> shapes{
      {2, 2, 2}, {2, 2, 3}, {4, 2, 3}, {2, 4, 4}, {4, 4, 4}};
  int books = 0;
  for (int s = 0; s < 4; ++s) {
    for (auto [M, L, n] : shapes) {
      bwc::Codebook cb =
          bwc::sample_codebook(M, L, n, 1.0, 4200 + 13 * books);
      try {
        bwc::leakage_monotonicity(cb, eta_grid);
      } catch (const bwc::property_violation& e) {
        return {false, std::string("leakage decreased: ") + e.what()};
      }
      ++books;
    }
  }

  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < 20; ++k) seeds.push_back(8800 + k);
  auto trend = bwc::covering_trend(2, 2, 0.5, 0.4, {2, 8, 32, 128}, seeds);
  bool decreasing = true;
  std::string means;
  for (std::size_t i = 0; i < trend.size(); ++i) {
    if (i > 0 && trend[i].mean > trend[i - 1].mean + kTrendSlack)
      decreasing = false;
    means += (i ? ", " : "") + fmt(trend[i].mean);
  }
  return {decreasing, std::to_string(books) +
                          " codebooks monotone; covering means [" + means +
                          "]"};
}

// ---- criterion 10: typical-set census against binomial closed form ----

Outcome typicality_census() {
  constexpr double kMassTol = 1e-12;
  bwc::FiniteDistribution coin{{0.5, 0.5}};

  // Exact binomial coefficients, n <= 20 fits comfortably in 64 bits.
  auto binomial = [](std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
  };

  bool ok = true;
  std::string note;
  for (auto [n, delta] :
       {std::pair<std::size_t, double>{4, 0.1}, {10, 0.1}, {10, 0.25},
        {16, 0.05}, {20, 0.05}, {20, 0.1}}) {
    bwc::TypicalityParams prm{n, delta};
    auto summary = bwc::typical_set_summary(coin, prm);

    // Membership depends only on the count of ones, so one canonical
    // sequence per count decides inclusion for all its permutations.
    std::uint64_t closed = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<int> seq(n, 0);
      std::fill(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(k), 1);
      if (bwc::is_strongly_typical(seq, coin, prm)) closed += binomial(n, k);
    }
    if (summary.count != closed) {
      ok = false;
      note = "census " + std::to_string(summary.count) + " vs closed form " +
             std::to_string(closed) + " at n=" + std::to_string(n);
      break;
    }

    auto b = bwc::cardinality_bounds(coin, prm);
    double log2_count = std::log2(double(summary.count));
    if (log2_count > b.log2_upper || log2_count < b.log2_lower) {
      ok = false;
      note = "cardinality bound violated at n=" + std::to_string(n);
      break;
    }
    if (summary.probability < 1.0 - b.eps_used - kMassTol) {
      ok = false;
      note = "typical mass below guarantee at n=" + std::to_string(n);
      break;
    }
  }

  if (ok) {
    auto pr = bwc::pruned_distribution(coin, {12, 0.1});
    double sum = 0.0;
    for (double q : pr.probs) sum += q;
    if (std::abs(sum - 1.0) > kMassTol) {
      ok = false;
      note = "pruned mass " + fmt(sum);
    } else {
      note = "six (n, delta) censuses exact; pruned mass within " +
             fmt(kMassTol);
    }
  }
  return {ok, note};
}

// ---- criterion 11: headline working-point numbers ----

Outcome scenario_numbers() {
  constexpr double kRelTol = 1e-9;
  bwc::ScenarioConfig cfg;
  bool budget_ok = bwc::block_budget(cfg) == 50000000ULL;
  auto rows = bwc::run_sweep(cfg);
  bool lo = std::abs(rows.front().E_r - 1e-2) <= kRelTol * 1e-2;
  bool hi = std::abs(rows.back().E_r - 1e2) <= kRelTol * 1e2;
  return {budget_ok && lo && hi,
          "block budget " + std::to_string(bwc::block_budget(cfg)) +
              ", received-photon endpoints " + fmt(rows.front().E_r) + " / " +
              fmt(rows.back().E_r)};
}

// ---- criterion 12: command-line contract, including the meta-test ----

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& cmd) {
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) return {};
  CommandResult r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.output.append(buf, got);
  int status = pclose(p);
  if (status >= 0 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  return r;
}

Outcome cli_contract(const std::string& cli) {
  constexpr double kFieldTol = 1e-12;
  const std::string q = "'" + cli + "'";

  auto sweep = run_command(q + " sweep --points 16");
  if (sweep.exit_code != 0)
    return {false, "sweep exited " + std::to_string(sweep.exit_code)};
  std::vector<bwc::SweepRow> parsed;
  try {
    parsed = bwc::sweep_from_csv(sweep.output);
  } catch (const std::exception& e) {
    return {false, std::string("emitted CSV failed to parse: ") + e.what()};
  }
  // Emitter and parser must be exact inverses on each other's output.
  auto reparsed = bwc::sweep_from_csv(bwc::sweep_to_csv(parsed));
  bwc::ScenarioConfig cfg;
  cfg.grid_points = 16;
  auto local = bwc::run_sweep(cfg);
  if (parsed.size() != local.size() || reparsed.size() != parsed.size())
    return {false, "row count mismatch"};
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    const auto& a = parsed[i];
    const auto& b = local[i];
    const auto& c = reparsed[i];
    for (auto [x, y, z] : {std::tuple{a.E_r, b.E_r, c.E_r},
                           {a.qq_raw, b.qq_raw, c.qq_raw},
                           {a.qq, b.qq, c.qq},
                           {a.cq_raw, b.cq_raw, c.cq_raw},
                           {a.cq, b.cq, c.cq},
                           {a.cc_raw, b.cc_raw, c.cc_raw},
                           {a.cc, b.cc, c.cc}}) {
      if (x != z) return {false, "round-trip not bitwise at row " +
                                     std::to_string(i)};
      if (std::abs(x - y) > kFieldTol)
        return {false, "emitted value differs from library at row " +
                           std::to_string(i)};
    }
    if (a.clipped_qq != b.clipped_qq || a.clipped_cq != b.clipped_cq ||
        a.clipped_cc != b.clipped_cc)
      return {false, "clip flags differ at row " + std::to_string(i)};
  }

  auto all = run_command(q + " verify all");
  if (all.exit_code != 0)
    return {false, "verify all exited " + std::to_string(all.exit_code)};

  // Meta-test: a deliberate bias in one entropy route must turn the
  // harness red, proving the check can actually fail.
  auto biased = run_command(q + " verify identities --perturb-hbpsk 1e-3");
  if (biased.exit_code != 1)
    return {false, "biased verify exited " + std::to_string(biased.exit_code) +
                       ", expected 1"};
  try {
    auto j = nlohmann::json::parse(biased.output);
    if (j.at("pass").get<bool>())
      return {false, "biased verify still reports pass=true"};
    bool tripped = false;
    for (const auto& c : j.at("checks"))
      if (c.at("name") == "identities.hbpsk-dual-route" &&
          !c.at("pass").get<bool>())
        tripped = true;
    if (!tripped)
      return {false, "bias did not trip the dual-route check"};
  } catch (const std::exception& e) {
    return {false, std::string("verify output not valid JSON: ") + e.what()};
  }

  return {true, "CSV round-trip bitwise; verify all green; injected bias "
                "turns the harness red"};
}

// ---- harness ----

struct Criterion {
  const char* name;
  double limit_seconds;
  Outcome (*run)(const std::string&);
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli-binary>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];

  using Runner = Outcome (*)(const std::string&);
  struct Row {
    const char* name;
    double limit;
    Runner run;
  };
  const Row rows[] = {
      {"pair-entropy closed forms agree to 1e-12", 1.0,
       [](const std::string&) { return dual_route_identity(); }},
      {"square-root measurement optimal for two codewords", 1.0,
       [](const std::string&) { return two_codeword_optimality(); }},
      {"overlap route matches number-basis route on all codebook shapes", 60.0,
       [](const std::string&) { return oracle_equivalence(); }},
      {"coherent-state truncation tail within guarantee", 1.0,
       [](const std::string&) { return truncation_tail_guarantee(); }},
      {"entropy continuity bound holds on 100 seeded pairs", 30.0,
       [](const std::string&) { return entropy_continuity_property(); }},
      {"measurement substitution bound holds on 100 seeded triples", 30.0,
       [](const std::string&) { return measurement_substitution_property(); }},
      {"default sweep keeps the capacity ordering with a quantum-only gap",
       5.0, [](const std::string&) { return sweep_capacity_ordering(); }},
      {"singleton parameter sets collapse to the closed forms", 1.0,
       [](const std::string&) { return singleton_reduction(); }},
      {"leakage monotone in tap transmissivity; covering trend monotone",
       120.0, [](const std::string&) { return monotonicity_suite(); }},
      {"typical-set census matches the binomial closed form", 30.0,
       [](const std::string&) { return typicality_census(); }},
      {"block budget and sweep endpoints reproduce the working point", 1.0,
       [](const std::string&) { return scenario_numbers(); }},
      {"command-line contract and red-path meta-test", 10.0,
       [](const std::string& c) { return cli_contract(c); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < std::size(rows); ++i) {
    const auto& row = rows[i];
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = row.run(cli);
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    bool in_time = elapsed <= row.limit;
    bool pass = out.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %2zu %s — %s [%.2f s, limit %.0f s]\n",
                pass ? "PASS" : "FAIL", i + 1, row.name, out.detail.c_str(),
                elapsed, row.limit);
    std::fflush(stdout);
  }
  if (failures == 0) {
    std::printf("all 12 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
