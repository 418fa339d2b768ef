#pragma once

#include <string>
#include <vector>

namespace bsfh {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // summary on success, witness on failure
};

struct AcceptanceOptions {
  std::string fixtures_dir = "fixtures";
  int fuzz_count = 200;
  unsigned long long fuzz_seed = 1;
  int jobs = 1;  // criteria evaluated concurrently when above one
};

// The eight exit criteria, in order. Exceptions inside a criterion count as failures.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// "criterion <id>: PASS|FAIL <title> (<detail>)"
std::string format_result(const CriterionResult& r);

}  // namespace bsfh
