#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace schottky {

struct AcceptanceOptions {
  unsigned precision_bits = 128;
  int workers = 1;
  // Criterion 12 re-runs criteria 1-11 and compares the serialized output.
  bool check_determinism = true;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  nlohmann::json details;
};

inline constexpr int kCriterionCount = 12;

// Runs one of criteria 1-11. Errors are caught and reported as failures.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
// Runs the requested criteria (all twelve when ids is empty).
std::vector<CriterionResult> run_criteria(const AcceptanceOptions& opts, const std::vector<int>& ids = {});

nlohmann::json to_json(const CriterionResult& r);
// {"schema", "suite", "precision_bits", "criteria": [...], "passed", "total"}
nlohmann::json acceptance_report(const std::vector<CriterionResult>& results, const AcceptanceOptions& opts);

}  // namespace schottky
