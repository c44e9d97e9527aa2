#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace ffg::cli {

struct SuiteOptions {
  bool slow = false;   // enables criterion 10
  bool quick = false;  // skips the scans (7, 10, 11)
  std::set<int> only;  // empty runs everything
  int workers = 1;
  std::string cli_path;  // binary used for the repeated-run check of criterion 11
};

enum class Verdict { pass, fail, skip };

struct CriterionResult {
  int id = 0;
  Verdict verdict = Verdict::fail;
  std::string detail;
  double seconds = 0;
};

// Prints one "[PASS|FAIL|SKIP] criterion k: ..." line per criterion to out as
// it completes, and wall times to timing (kept apart so out is reproducible).
std::vector<CriterionResult> run_suite(const SuiteOptions& opt, std::ostream& out, std::ostream& timing);
bool suite_passed(const std::vector<CriterionResult>& results);

}  // namespace ffg::cli
