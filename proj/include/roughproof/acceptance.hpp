// The release gate: seven end-to-end checks run against the checked-in data
// directory. Each criterion reports pass/fail, its runtime, and a one-line
// detail; a criterion also fails when it exceeds its runtime budget. The
// same runner backs the `regression` subcommand of the CLI and the
// acceptance test binary.
//
//   1. golden-derivations   checked-in derivations parse, check, and are
//                           canonically rendered (< 1 s)
//   2. search-regression    the ten bridge targets are proved by search and
//                           the proofs re-check (< 2 min)
//   3. cut-elimination      every corpus proof with cuts eliminates to a
//                           cut-free proof of the same end-sequent that
//                           re-checks and passes the subformula audit (< 30 s)
//   4. soundness-sweep      every rule of every calculus holds on every
//                           model with carrier <= 5 (< 10 min)
//   5. algebra-oracles      kernel/embedding identities, the kernel
//                           comparison isomorphism, presentation round
//                           trips, and evaluation preservation under the
//                           translation (< 5 min)
//   6. separation-witnesses countermodels with carrier <= 5 separating the
//                           algebra classes along the bridge targets (< 2 min)
//   7. robustness           10 000 fuzzed term round trips; 1 000 mutated
//                           derivations rejected with a path-bearing error
//                           (< 1 min)

#pragma once

#include <string>
#include <vector>

namespace rp {

struct CriterionResult {
  int index = 0;          // 1-based
  std::string name;       // short slug, stable across releases
  bool pass = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;     // summary on pass, first failure otherwise
};

// Runs all seven criteria. `data_dir` must contain golden/ and corpus/.
// jobs: worker threads for the parallel kernels (0 = library default).
std::vector<CriterionResult> run_acceptance(const std::string& data_dir,
                                            int jobs = 0);

// "criterion 3 cut-elimination: PASS (0.41s / 30s) 13 proofs eliminated"
std::string format_criterion(const CriterionResult& r);

}  // namespace rp
