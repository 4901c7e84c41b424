#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toeprank::acceptance {

// One checked property of the library, run end to end at pinned tolerances.
// `documented_limit` marks a failure whose cause is a measured numerical
// ceiling recorded in the docs, not a code defect; the gate below treats
// exactly those failures as expected.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool documented_limit = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the full list in order. `progress` receives one line per criterion as
// it finishes; pass nullptr to stay quiet. Every random draw inside uses a
// fixed seed, so the results and details are reproducible.
std::vector<CriterionResult> run_all(std::ostream* progress = nullptr);

// Fixed-width pass/fail table, one row per criterion. Deterministic: carries
// no timing data.
std::string summary_table(const std::vector<CriterionResult>& results);

// True when every failure, if any, is a documented limit.
bool all_passed_or_documented(const std::vector<CriterionResult>& results);

}  // namespace toeprank::acceptance
