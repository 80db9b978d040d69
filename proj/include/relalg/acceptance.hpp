#pragma once

// The end-to-end acceptance checks, shared by the acceptance binary and the
// `selftest` command.

#include <iosfwd>
#include <string>
#include <vector>

namespace relalg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

// Runs the listed criteria (all when empty), printing one line per criterion
// to `out` as each finishes.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& only = {});

std::string format_result(const CriterionResult& r);

}  // namespace relalg
