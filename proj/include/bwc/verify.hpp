#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bwc {

// Size and instrumentation knobs for the verification suites. The defaults
// keep a full `all` run to a few seconds.
struct VerifyOptions {
  // Harness self-test: added to one side of the dual-formula entropy check,
  // so a nonzero value must turn the identities suite red.
  double perturb_hbpsk = 0.0;
  int identity_points = 1000;
  int lemma_pairs = 30;    // entropy-continuity sample pairs
  int lemma_triples = 30;  // measurement-inequality sample triples
  int mc_codebooks = 3;    // codebooks per Monte Carlo property
  std::uint64_t base_seed = 12345;
};

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<VerifyCheck> checks;
  bool pass = false;
};

// Suite names: identities, oracle, lemmas, typicality, montecarlo, all.
bool known_suite(const std::string& name);
std::vector<std::string> suite_names();

// Runs one suite (or all of them under "all"); throws config_error for an
// unknown name. Never throws on a failing check: failures are reported in
// the returned structure.
SuiteReport run_suite(const std::string& name, const VerifyOptions& options);

// {"suite": ..., "checks": [{"name","pass","detail"}...], "pass": ...}
std::string report_to_json(const SuiteReport& report);

}  // namespace bwc
