#pragma once

#include "hk/report.hpp"

namespace hk {

/// Runs one named suite. Throws std::invalid_argument for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& config);

/// Runs the configured suites (all when none are selected) in the canonical
/// order.
std::vector<CheckResult> run_verify(const RunConfig& config);

}  // namespace hk
