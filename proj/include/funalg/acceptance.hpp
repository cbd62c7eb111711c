#pragma once

#include <string>
#include <vector>

namespace funalg {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;

  /// "criterion N PASS|FAIL: title (detail)"
  std::string line() const;
};

struct AcceptanceOptions {
  /// Directory holding the shipped .cl files.
  std::string corpus_dir;
  /// Criteria to run; empty means 1-12.
  std::vector<int> only;
};

/// Runs the in-process criteria 1-12. Each criterion catches its own errors.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

}  // namespace funalg
