#pragma once

#include <vector>

#include "fracsemi/job.hpp"

namespace fracsemi {

/// Runs the built-in invariant suite over fixed (non-random) fixtures. Cases run
/// concurrently; the result is ordered by case name.
std::vector<CheckResult> run_property_suite();

}  // namespace fracsemi
