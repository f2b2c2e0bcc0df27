#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperplane/harness.hpp"

namespace hyperplane {

inline constexpr int kCriterionCount = 15;

struct AcceptanceOptions {
  uint64_t seed = 1;
  int threads = 0;
  // Deterministic parts only: no Monte Carlo.
  bool quick = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<TestReport> reports;
  bool skipped = false;  // quick mode and the criterion is Monte Carlo only
  bool pass() const;     // all required reports pass
  std::string summary_line() const;
};

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

// Invariant suite behind `validate`: the criteria plus the identity checks, with the
// stated sigma constant reported but not required (see README).
std::vector<TestReport> run_validation(const AcceptanceOptions& options);

}  // namespace hyperplane
