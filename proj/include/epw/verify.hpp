#pragma once

#include <iosfwd>

#include "epw/correspondences.hpp"

namespace epw::verify {

enum class Level { quick, full };

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs the acceptance battery.  `quick` is a reduced smoke mode (smaller
/// fields and sample counts); `full` runs every criterion at its stated size.
/// Progress lines go to `log` when non-null.
std::vector<CriterionResult> run_acceptance(Level level, unsigned jobs, std::ostream* log);

bool all_pass(const std::vector<CriterionResult>& rs);

}  // namespace epw::verify
