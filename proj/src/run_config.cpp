#include "hk/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hk {

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> s{"exterior", "quaternionic", "operators", "kodaira", "transgression", "zeta", "clifford"};
    return s;
}

void RunConfig::validate() const {
    if (kmax < 1) throw std::invalid_argument("kmax must be at least 1");
    if (tolerance && !(*tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (samples < 1) throw std::invalid_argument("samples must be at least 1");
    for (int a = 0; a < 4; ++a)
        if (!std::isfinite(theta[a]) || theta[a] < 0.0 || theta[a] >= 1.0) throw std::invalid_argument("theta must lie in [0,1)^4");
    for (const auto& s : suites)
        if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
            throw std::invalid_argument("unknown suite '" + s + "'");
}

void RunConfig::normalize() {
    for (int a = 0; a < 4; ++a) {
        if (!std::isfinite(theta[a])) throw std::invalid_argument("theta must be finite");
        theta[a] -= std::floor(theta[a]);
        if (theta[a] >= 1.0) theta[a] = 0.0;
    }
    validate();
}

RunConfig merge_config(RunConfig base, const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "kmax") base.kmax = value.get<int>();
            else if (key == "tolerance") base.tolerance = value.get<double>();
            else if (key == "seed") base.seed = value.get<std::uint64_t>();
            else if (key == "theta") {
                const auto v = value.get<std::vector<double>>();
                if (v.size() != 4) throw std::invalid_argument("theta needs 4 components");
                base.theta = Vec4(v[0], v[1], v[2], v[3]);
            } else if (key == "suites") base.suites = value.get<std::vector<std::string>>();
            else if (key == "samples") base.samples = value.get<int>();
            else if (key == "out") base.out = value.get<std::string>();
            else throw std::invalid_argument("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return base;
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j{{"kmax", c.kmax},
                     {"seed", c.seed},
                     {"theta", {c.theta[0], c.theta[1], c.theta[2], c.theta[3]}},
                     {"suites", c.suites},
                     {"samples", c.samples}};
    j["tolerance"] = c.tolerance ? nlohmann::json(*c.tolerance) : nlohmann::json(nullptr);
    return j;
}

Vec4 parse_theta(const std::string& text) {
    std::stringstream ss(text);
    std::string item;
    std::vector<double> v;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("theta component '" + item + "' is not a number");
        }
        if (used != item.size()) throw std::invalid_argument("theta component '" + item + "' is not a number");
        v.push_back(x);
    }
    if (v.size() != 4) throw std::invalid_argument("theta needs 4 comma-separated components");
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace hk
