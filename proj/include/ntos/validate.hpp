#ifndef NTOS_VALIDATE_HPP
#define NTOS_VALIDATE_HPP

#include <string>
#include <vector>

#include "ntos/tables.hpp"

namespace ntos {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured numbers, thresholds, failure reasons
};

// Runs one numbered check of the validation suite (1..8).
CriterionResult run_criterion(int id);

// Runs all eight; order fixed.
std::vector<CriterionResult> run_acceptance();

TableArtifact validation_artifact(const std::vector<CriterionResult>& results);

inline constexpr int kCriterionCount = 8;

}  // namespace ntos

#endif
