#pragma once

// Self-contained verification suites for the `verify` CLI command: every
// oracle equivalence and invariant the library promises, run against a fixed
// seed so the report is reproducible.

#include <string>
#include <vector>

namespace spinchain {

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0;  // measured worst case
  double tolerance = 0;
  std::string note;
};

struct VerifyOptions {
  int oracle_cap = 64;       // largest chain for dense-oracle comparisons
  int quadrature_steps = 2000;
  int n_random = 25;         // randomized configs per property
  unsigned seed = 0x5eed;
};

std::vector<CheckResult> run_verification(const VerifyOptions& opt);

} // namespace spinchain
