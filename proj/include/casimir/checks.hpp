#pragma once

// Built-in verification scenarios with fixed canonical parameters. Each one
// reports a measured figure, the criterion it is held to, and wall time.

#include <functional>
#include <string>
#include <vector>

namespace casimir::checks {

struct CheckReport {
  std::string name;
  double measured = 0.0;
  /// Human-readable acceptance condition, e.g. "|ratio - 1| < 0.05".
  std::string criterion;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct CheckInfo {
  const char* name;
  const char* summary;
  std::function<CheckReport()> run;
};

CheckReport sum_rule();
CheckReport lambda_independence();
CheckReport short_distance();
CheckReport plasmon_dominance();
CheckReport perfect_mirror();
CheckReport eddy_repulsion();
CheckReport te_cancellation();
CheckReport drude_plasma_gap();
CheckReport cut_side_oracle();
CheckReport mode_term_imaginary();

/// All scenarios in their canonical order.
const std::vector<CheckInfo>& registry();

/// nullptr when unknown.
const CheckInfo* find(const std::string& name);

/// "PASS sum-rule: measured 3.1e-17, |residual| < 1e-13 (0.01 s)".
std::string format_line(const CheckReport& r);

}  // namespace casimir::checks
