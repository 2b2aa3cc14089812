#pragma once

// Versioned JSON reports. Every report carries "schema"; validate_report
// dispatches on it and throws std::invalid_argument on any mismatch.

#include "hk/clifford_spin.hpp"
#include "hk/run_config.hpp"
#include "hk/transgression.hpp"
#include "hk/zeta_torsion.hpp"

#include <json.hpp>

namespace hk {

inline constexpr const char* kVerifySchema = "hktorus.verify/1";
inline constexpr const char* kTransgressSchema = "hktorus.transgress/1";
inline constexpr const char* kTorsionSchema = "hktorus.torsion/1";
inline constexpr const char* kLaplSchema = "hktorus.lapl-constant/1";

struct CheckResult {
    std::string suite;
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

nlohmann::json verify_report(const RunConfig& config, const std::vector<CheckResult>& checks);
nlohmann::json transgression_report(const TransgressionResult& r);
nlohmann::json torsion_report_json(const TorsionReport& r);
nlohmann::json lapl_report(const LaplConstant& c);
nlohmann::json clifford_report();

void validate_report(const nlohmann::json& j);

}  // namespace hk
