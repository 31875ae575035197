// Validation-suite runner: one pass/fail line per criterion.
// With an argument, runs only that criterion (used by ctest to report each
// criterion separately); exits nonzero if anything failed.

#include <cstdio>
#include <cstdlib>

#include "ntos/validate.hpp"

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all_passed = true;
  for (int id = 1; id <= ntos::kCriterionCount; ++id) {
    if (only != 0 && id != only) continue;
    const ntos::CriterionResult r = ntos::run_criterion(id);
    std::printf("criterion %d [%s]: %s\n", r.id, r.name.c_str(),
                r.passed ? "pass" : "FAIL");
    if (!r.detail.empty()) std::printf("  %s\n", r.detail.c_str());
    all_passed = all_passed && r.passed;
  }
  return all_passed ? 0 : 1;
}
