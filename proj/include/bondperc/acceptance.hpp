#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bondperc::acceptance {

enum class Status { pass, fail, skipped };

struct CriterionResult {
  int id = 0;
  std::string title;
  Status status = Status::fail;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  bool include_long = true;  // criterion 7 and the 30-edge solids of criterion 9
  unsigned threads = 0;
};

// Runs every acceptance criterion in order. When `log` is non-null one
// line per criterion is written to it as soon as the criterion finishes.
std::vector<CriterionResult> run_all(const Options& options, std::ostream* log = nullptr);

std::string format_line(const CriterionResult& r);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace bondperc::acceptance
