#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pararadon {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 0;
  std::vector<int> only;  ///< empty: run all
};

/// Runs the acceptance criteria in order; progress lines go to `log` if given.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {}, std::ostream* log = nullptr);

/// One "PASS"/"FAIL" line per criterion.
void print_results(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace pararadon
