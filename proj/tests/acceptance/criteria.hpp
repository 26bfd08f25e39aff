#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace disac::acceptance {

struct Outcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria();

/// Runs the selected criteria (all when `ids` is empty), printing one
/// "PASS"/"FAIL" line per criterion. Returns the number of failures.
int run(const std::vector<int>& ids, std::ostream& out);

}  // namespace disac::acceptance
