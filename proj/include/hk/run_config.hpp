#pragma once

#include "hk/exterior.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hk {

struct RunConfig {
    int kmax = 4;
    /// Overrides every check's nominal tolerance when set.
    std::optional<double> tolerance;
    std::uint64_t seed = 1;
    Vec4 theta = Vec4::Zero();
    std::vector<std::string> suites;  // empty = all
    int samples = 5;                  // random fields per property check
    std::string out;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    /// Reduces theta mod 1 and validates.
    void normalize();
};

const std::vector<std::string>& known_suites();

/// Applies the keys present in `j` (kmax, tolerance, seed, theta, suites,
/// samples, out) on top of `base`; unknown keys are rejected.
RunConfig merge_config(RunConfig base, const nlohmann::json& j);

nlohmann::json to_json(const RunConfig& c);

/// Parses "a,b,c,d".
Vec4 parse_theta(const std::string& text);

}  // namespace hk
