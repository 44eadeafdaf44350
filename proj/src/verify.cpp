#include "bwc/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "bwc/bounds.hpp"
#include "bwc/capacity.hpp"
#include "bwc/codesim.hpp"
#include "bwc/entropy.hpp"
#include "bwc/errors.hpp"
#include "bwc/fock.hpp"
#include "bwc/gram.hpp"
#include "bwc/scenario.hpp"
#include "bwc/typicality.hpp"

namespace bwc {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

void add_check(SuiteReport& rep, const std::string& name, bool pass,
               const std::string& detail) {
  rep.checks.push_back({name, pass, detail});
}

FockOperator random_density(int cutoff, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  int d = cutoff + 1;
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  return {rho, cutoff, 1};
}

FockOperator random_measurement(int cutoff, std::mt19937_64& rng) {
  FockOperator base = random_density(cutoff, rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(base.m);
  Eigen::VectorXd lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    lam(i) = 1.0 / (1.0 + std::exp(-40.0 * (lam(i) - 0.05)));
  return {es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint(),
          cutoff, 1};
}

// Random sign codebook turned into labels scaled per mode.
std::vector<FockVector> codebook_vectors(const Codebook& cb, double scale,
                                         int cutoff) {
  std::vector<FockVector> v;
  for (std::uint64_t m = 0; m < cb.M; ++m)
    for (std::uint64_t l = 0; l < cb.L; ++l)
      v.push_back(product_vector(codeword_label(cb, m, l, scale), cutoff));
  return v;
}

SuiteReport run_identities(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "identities";

  {
    double worst = 0.0;
    int points = std::max(opt.identity_points, 2);
    for (int i = 0; i < points; ++i) {
      double x = 50.0 * i / static_cast<double>(points - 1);
      double dev =
          std::abs(h_bpsk(x) + opt.perturb_hbpsk - h_bpsk_cosh_form(x));
      worst = std::max(worst, dev);
    }
    add_check(rep, "identities.hbpsk-dual-route", worst <= 1e-12,
              "max deviation " + fmt(worst) + " over " +
                  std::to_string(points) + " points in [0,50]");
  }

  {
    bool ok = true;
    double prev = -1.0;
    for (int i = 0; i <= 400; ++i) {
      double v = h_bpsk(0.05 * i);
      if (v < prev - 3e-16) ok = false;
      prev = v;
    }
    add_check(rep, "identities.hbpsk-nondecreasing", ok,
              "grid step 0.05 over [0,20]");
  }

  {
    bool ok = homodyne_error(0.0) == 0.5;
    double prev = 0.5;
    for (int i = 1; i <= 200; ++i) {
      double v = homodyne_error(0.05 * i);
      if (!(v < prev)) ok = false;
      prev = v;
    }
    add_check(rep, "identities.homodyne-error-decreasing", ok,
              "strictly decreasing from 1/2 on [0,10]");
  }

  {
    ScenarioConfig cfg;
    cfg.grid_points = 16;
    auto rows = run_sweep(cfg);
    bool ok = true;
    for (const auto& r : rows)
      if (r.qq_raw < r.cq_raw - 1e-12 || r.cc_raw < r.cq_raw - 1e-12)
        ok = false;
    add_check(rep, "identities.capacity-ordering", ok,
              "raw qq >= raw cq and raw cc >= raw cq on a 16-point sweep");
  }

  {
    double worst = 0.0;
    for (double E : {0.1, 0.5, 1.0, 2.0}) {
      WeightedEnsemble pair{{{{std::sqrt(E)}}, {{-std::sqrt(E)}}},
                            {0.5, 0.5}};
      double p = srm_success(build_gram(pair), 2);
      double helstrom = 0.5 * (1.0 + std::sqrt(1.0 - std::exp(-4.0 * E)));
      worst = std::max(worst, std::abs(p - helstrom));
    }
    add_check(rep, "identities.srm-two-state-optimal", worst <= 1e-10,
              "max deviation " + fmt(worst) + " from the two-state optimum");
  }

  {
    ChannelParamSet s{{0.5}, {0.2}, 1.0};
    double rate = achievable_rate(h_bpsk(received_photon_number(0.5, 1.0)),
                                  h_bpsk(received_photon_number(0.2, 1.0)));
    bool ok = capacity_report(s).qq.raw == rate;
    add_check(rep, "identities.rate-capacity-consistency", ok,
              "singleton-set capacity equals the entropy difference");
  }

  return rep;
}

SuiteReport run_oracle(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "oracle";
  (void)opt;

  {
    double E = 1.0;
    WeightedEnsemble pair{{{{std::sqrt(E)}}, {{-std::sqrt(E)}}}, {0.5, 0.5}};
    double h_gram = ensemble_entropy(build_gram(pair));
    double h_dense =
        von_neumann_entropy(density_from_ensemble(pair, 40));
    double dev = std::abs(h_gram - h_dense);
    add_check(rep, "oracle.entropy-1mode", dev <= 1e-6,
              "overlap route vs truncated-basis route, deviation " + fmt(dev));
  }

  {
    double worst = 0.0;
    for (double E : {0.5, 1.0}) {
      WeightedEnsemble pair{{{{std::sqrt(E)}}, {{-std::sqrt(E)}}},
                            {0.5, 0.5}};
      std::vector<FockVector> states{coherent_vector(std::sqrt(E), 40),
                                     coherent_vector(-std::sqrt(E), 40)};
      double dev = std::abs(srm_success(build_gram(pair), 2) -
                            srm_povm_success(states));
      worst = std::max(worst, dev);
    }
    add_check(rep, "oracle.srm-1mode", worst <= 1e-6,
              "max deviation " + fmt(worst));
  }

  {
    Codebook cb = sample_codebook(2, 2, 2, 0.8, 7100);
    auto vecs = codebook_vectors(cb, 1.0, 40);
    WeightedEnsemble full = codebook_ensemble(cb, 1.0);
    WeightedEnsemble msg = message_ensemble(cb, 0, 1.0);
    std::vector<FockVector> msg_vecs(vecs.begin(), vecs.begin() + 2);
    double d1 = std::abs(ensemble_entropy(build_gram(full)) -
                         ensemble_entropy_vectors(vecs, full.weights));
    double d2 = std::abs(srm_success(build_gram(full), 4) -
                         srm_success_vectors(vecs));
    double d3 = std::abs(average_state_distance(full, msg) -
                         average_distance_vectors(vecs, full.weights, msg_vecs,
                                                  msg.weights));
    double worst = std::max({d1, d2, d3});
    add_check(rep, "oracle.span-2mode", worst <= 1e-6,
              "entropy/measurement/distance max deviation " + fmt(worst));
  }

  {
    Codebook cb = sample_codebook(4, 2, 3, 1.0, 7200);
    auto vecs = codebook_vectors(cb, 1.0, 40);
    WeightedEnsemble full = codebook_ensemble(cb, 1.0);
    WeightedEnsemble msg = message_ensemble(cb, 1, 1.0);
    std::vector<FockVector> msg_vecs(vecs.begin() + 2, vecs.begin() + 4);
    double d1 = std::abs(ensemble_entropy(build_gram(full)) -
                         ensemble_entropy_vectors(vecs, full.weights));
    double d2 = std::abs(srm_success(build_gram(full), 8) -
                         srm_success_vectors(vecs));
    double d3 = std::abs(average_state_distance(full, msg) -
                         average_distance_vectors(vecs, full.weights, msg_vecs,
                                                  msg.weights));
    double worst = std::max({d1, d2, d3});
    add_check(rep, "oracle.span-3mode", worst <= 1e-6,
              "entropy/measurement/distance max deviation " + fmt(worst));
  }

  return rep;
}

SuiteReport run_lemmas(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "lemmas";

  {
    bool ok = true;
    std::ostringstream detail;
    for (double nbar : {0.5, 1.0, 2.0}) {
      int base = static_cast<int>(std::ceil(8.0 * std::exp(1.0) * nbar)) + 1;
      for (int N : {base, base + 10}) {
        auto t = tail_probability(std::sqrt(nbar), N);
        if (!t.satisfied || !t.precondition) ok = false;
      }
    }
    add_check(rep, "lemmas.poisson-tail-bound", ok,
              "tail <= 2^{-N-1} at and above the 8e*nbar threshold");
  }

  {
    std::mt19937_64 rng(opt.base_seed);
    std::uniform_real_distribution<double> mix(0.0, 0.6);
    int evaluated = 0, violations = 0, skipped = 0;
    int pairs = std::max(opt.lemma_pairs, 1);
    for (int k = 0; k < pairs; ++k) {
      FockOperator rho = random_density(8, rng);
      FockOperator other = random_density(8, rng);
      double t = mix(rng);
      FockOperator sigma{(1.0 - t) * rho.m + t * other.m, 8, 1};
      double eps = 0.5 * trace_norm_distance(rho, sigma);
      double E = std::max(photon_number_expectation(rho),
                          photon_number_expectation(sigma));
      if (eps > E / (1.0 + E) || eps == 0.0) {
        ++skipped;
        continue;
      }
      ++evaluated;
      double gap = std::abs(von_neumann_entropy(rho) -
                            von_neumann_entropy(sigma));
      if (gap > entropy_continuity_bound(eps, E) + 1e-10) ++violations;
    }
    add_check(rep, "lemmas.entropy-continuity", violations == 0 && evaluated > 0,
              std::to_string(evaluated) + " pairs evaluated, " +
                  std::to_string(skipped) + " outside the validity window, " +
                  std::to_string(violations) + " violations");
  }

  {
    std::mt19937_64 rng(opt.base_seed + 1);
    int violations = 0;
    int triples = std::max(opt.lemma_triples, 1);
    for (int k = 0; k < triples; ++k) {
      FockOperator lambda_op = random_measurement(9, rng);
      FockOperator rho = random_density(9, rng);
      FockOperator sigma = random_density(9, rng);
      if (!check_finite_support_lemma(lambda_op, rho, sigma)) ++violations;
    }
    add_check(rep, "lemmas.measurement-substitution", violations == 0,
              std::to_string(triples) + " triples, " +
                  std::to_string(violations) + " violations");
  }

  {
    WeightedEnsemble one{{{{1.0}}}, {1.0}};
    auto rho = density_from_ensemble(one, 40);
    auto cut = truncate_renormalize(rho, 23);
    FockOperator embedded{Eigen::MatrixXcd::Zero(41, 41), 40, 1};
    embedded.m.topLeftCorner(24, 24) = cut.m;
    double d = trace_norm_distance(rho, embedded);
    bool ok = d <= std::ldexp(1.0, -23);
    add_check(rep, "lemmas.truncation-distance", ok,
              "distance " + fmt(d) + " vs 2^-23 at unit mean photon number");
  }

  return rep;
}

SuiteReport run_typicality_suite(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "typicality";
  (void)opt;
  FiniteDistribution coin{{0.5, 0.5}};

  {
    auto s = typical_set_summary(coin, {10, 0.1});
    auto tight = typical_set_summary(coin, {10, 1e-9});
    bool ok = s.count == 672 && tight.count == 252 &&
              s.probability == 672.0 / 1024.0;
    add_check(rep, "typicality.enumeration-closed-form", ok,
              "n=10 counts " + std::to_string(s.count) + "/" +
                  std::to_string(tight.count) + ", mass " +
                  fmt(s.probability));
  }

  {
    bool ok = true;
    for (std::size_t n : {4u, 10u, 16u}) {
      for (double delta : {0.05, 0.1, 0.2, 0.45}) {
        TypicalityParams prm{n, delta};
        auto s = typical_set_summary(coin, prm);
        auto b = cardinality_bounds(coin, prm);
        double log2_count = std::log2(static_cast<double>(s.count));
        if (log2_count > b.log2_upper + 1e-12) ok = false;
        if (log2_count < b.log2_lower - 1e-12) ok = false;
        if (s.probability < 1.0 - b.eps_used - 1e-12) ok = false;
      }
    }
    add_check(rep, "typicality.cardinality-bounds", ok,
              "exhaustive census against both bounds, n in {4,10,16}");
  }

  {
    FiniteDistribution skew{{0.3, 0.7}};
    auto pr = pruned_distribution(skew, {10, 0.1});
    double sum = 0.0;
    for (double q : pr.probs) sum += q;
    bool ok = std::abs(sum - 1.0) <= 1e-12;
    add_check(rep, "typicality.pruned-normalization", ok,
              "skewed source mass sums to " + fmt(sum));
  }

  {
    ProofParams pp;
    pp.S_sigma = 0.9867;
    pp.eps_prime = 0.01;
    pp.M_size = std::uint64_t(1) << 40;
    pp.L_size = std::uint64_t(1) << 40;
    auto b = packing_bound(pp, 100, 1.0, 0.05);
    bool ok = std::abs(b.value - 0.39969001209) <= 1e-9 && !b.vacuous;

    auto c = covering_bound(1e-2, std::uint64_t(1) << 60, std::exp2(20.0));
    ok = ok && std::abs(c.log10_failure - (-119371.63655298580)) <= 1e-4;
    add_check(rep, "typicality.bound-evaluators", ok,
              "packing value " + fmt(b.value) + ", covering log10 failure " +
                  fmt(c.log10_failure));
  }

  return rep;
}

SuiteReport run_montecarlo(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "montecarlo";
  int books = std::max(opt.mc_codebooks, 1);

  {
    bool ok = true;
    std::string detail = "leakage non-decreasing on eta in [0,1]";
    std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    for (int k = 0; k < books; ++k) {
      Codebook cb = sample_codebook(2, 2, 2, 1.0, opt.base_seed + 10 + k);
      try {
        leakage_monotonicity(cb, grid);
      } catch (const property_violation& e) {
        ok = false;
        detail = e.what();
      }
    }
    add_check(rep, "montecarlo.leakage-monotone", ok, detail);
  }

  {
    bool ok = true;
    double worst = 0.0;
    for (int k = 0; k < books; ++k) {
      Codebook cb = sample_codebook(4, 2, 3, 1.0, opt.base_seed + 20 + k);
      double chi = leakage(cb, 0.8);
      worst = std::max(worst, chi);
      if (chi > 2.0 + 1e-9) ok = false;
    }
    add_check(rep, "montecarlo.leakage-capped", ok,
              "max leakage " + fmt(worst) + " vs log2(M) = 2");
  }

  {
    std::vector<std::uint64_t> seeds;
    for (int k = 0; k < 2 * books; ++k)
      seeds.push_back(opt.base_seed + 30 + k);
    auto trend = covering_trend(2, 2, 0.5, 0.4, {2, 8}, seeds);
    bool ok = trend.size() == 2 && trend[1].mean <= trend[0].mean;
    add_check(rep, "montecarlo.covering-trend", ok,
              "mean distance " + fmt(trend[0].mean) + " at L=2 vs " +
                  fmt(trend[1].mean) + " at L=8");
  }

  {
    Codebook cb = sample_codebook(2, 2, 2, 1.0, opt.base_seed + 40);
    double vac = success_probability(cb, 0.0);
    Codebook single = sample_codebook(1, 1, 1, 1.0, opt.base_seed + 41);
    bool ok = std::abs(vac - 0.25) <= 1e-10 &&
              success_probability(single, 1.0) == 1.0;
    add_check(rep, "montecarlo.success-endpoints", ok,
              "vacuum-channel success " + fmt(vac) + ", singleton success 1");
  }

  return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"identities", "oracle", "lemmas", "typicality", "montecarlo", "all"};
}

bool known_suite(const std::string& name) {
  auto names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& options) {
  SuiteReport rep;
  if (name == "identities")
    rep = run_identities(options);
  else if (name == "oracle")
    rep = run_oracle(options);
  else if (name == "lemmas")
    rep = run_lemmas(options);
  else if (name == "typicality")
    rep = run_typicality_suite(options);
  else if (name == "montecarlo")
    rep = run_montecarlo(options);
  else if (name == "all") {
    rep.suite = "all";
    for (const char* sub :
         {"identities", "oracle", "lemmas", "typicality", "montecarlo"}) {
      SuiteReport part = run_suite(sub, options);
      rep.checks.insert(rep.checks.end(), part.checks.begin(),
                        part.checks.end());
    }
  } else {
    throw config_error("unknown verify suite '" + name +
                       "'; expected one of identities, oracle, lemmas, "
                       "typicality, montecarlo, all");
  }
  rep.pass = true;
  for (const auto& c : rep.checks)
    if (!c.pass) rep.pass = false;
  return rep;
}

std::string report_to_json(const SuiteReport& report) {
  nlohmann::ordered_json o;
  o["suite"] = report.suite;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  o["checks"] = std::move(checks);
  o["pass"] = report.pass;
  return o.dump(2);
}

}  // namespace bwc
