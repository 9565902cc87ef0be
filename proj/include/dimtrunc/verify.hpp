#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dimtrunc {

struct VerifyOptions {
  unsigned workers = 0;  // 0 = auto
  // Negative-control hook: naming a check here perturbs the constant that
  // check verifies, which must make it (and only it) fail.
  std::string tamper;
  // Run a single named check (test hook; empty = all).
  std::string only;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed = false;
  double total_seconds = 0.0;
};

// Runs the full verification battery: closed-form cross-checks, quadrature
// cross-checks, bound-domination Monte Carlo runs, decay-rate recovery, and
// byte-level reproducibility. Streams one line per check to `progress` when
// given.
VerifyReport run_verification(const VerifyOptions& options,
                              std::ostream* progress = nullptr);

}  // namespace dimtrunc
