#pragma once
// Acceptance harness: a frozen battery of end-to-end verifications, each one
// exercising a different slice of the workbench (closed-form rank-1 checks,
// the three-route q-analog agreement, Hecke structure constants, centralizer
// eigenvalues, hard Lefschetz, minuscule cyclicity, generalized-exponent
// certificates, the cross-module consistency web, graded Hom dimensions, and
// CLI determinism under cache faults).
//
// The list of criterion ids is frozen in acceptance_inventory(); the runner
// checks its own registry against that list, so a criterion cannot be dropped
// without the whole battery failing.

#include <string>
#include <vector>

#include "satake/klhecke.hpp"

namespace satake {

struct AcceptanceOptions {
  std::string datum_filter;   // restrict to one label ("" = all each criterion needs)
  int max_height = 0;         // cap lambda(h) (0 = per-criterion defaults)
  bool subprocess = true;     // allow criteria that spawn the CLI binary
  std::string cli_path;       // CLI binary for the determinism criterion
  KLCache* cache = nullptr;   // shared KL cache (may be null)
};

struct CriterionResult {
  std::string id;       // stable kebab-case identifier
  std::string name;     // one-line description
  std::string status;   // "PASS", "FAIL", or "SKIP"
  long long cases = 0;  // individual checks performed
  std::string detail;   // first failure, or a short summary
};

// Frozen ids in report order.
const std::vector<std::string>& acceptance_inventory();

// Runs every criterion (filters may SKIP some); throws MathError if the
// registry and the inventory ever disagree.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

}  // namespace satake
