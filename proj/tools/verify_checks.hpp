// Identity-check suite behind `quasispec verify-all`.
#pragma once

#include <string>
#include <vector>

#include "runner.hpp"

namespace quasispec::cli {

struct Check {
  std::string name;
  bool pass = false;
  double value = 0;
  double threshold = 0;
  std::string detail;
};

// Runs every proposition-level identity check against built-in canonical cases
// plus the configured potential where meaningful. Append-only into `out`.
void run_checks(const RunConfig& cfg, std::vector<Check>& out);

}  // namespace quasispec::cli
