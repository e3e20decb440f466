#pragma once

#include <string>
#include <vector>

#include "twistaff/config.hpp"

namespace twistaff {

const std::vector<std::string>& suite_names();
// comma-separated list, "all", "none" or empty; unknown names are usage errors
std::vector<std::string> parse_suites(const std::string& list);

Report scalar_suite(unsigned long seed, const std::vector<long>& conductors);

// Builds everything the requested suites need first, so configuration errors
// surface before any suite runs.
Report run_suites(const RunConfig& cfg, const std::vector<std::string>& suites);

}  // namespace twistaff
