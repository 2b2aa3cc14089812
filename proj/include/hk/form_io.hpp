#pragma once

// JSON encoding of FormField:
//   {"truncation": K, "entries": [{"k": [k1,k2,k3,k4], "blade_mask": m, "re": x, "im": y}, ...]}
// Only nonzero coefficients are written; absent entries are zero.

#include "hk/spectral_forms.hpp"

#include <json.hpp>

#include <filesystem>

namespace hk {

nlohmann::json to_json(const FormField& f);
/// Throws std::invalid_argument on malformed input, out-of-range modes or
/// masks, and duplicate entries.
FormField form_from_json(const nlohmann::json& j);

FormField read_form(const std::filesystem::path& path);
void write_form(const std::filesystem::path& path, const FormField& f);

/// Reads a whole JSON document; throws std::runtime_error if unreadable and
/// std::invalid_argument if it does not parse.
nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace hk
