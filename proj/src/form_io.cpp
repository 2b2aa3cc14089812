#include "hk/form_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace hk {

nlohmann::json to_json(const FormField& f) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < f.mode_count(); ++i) {
        const ModeIndex k = f.mode_at(i);
        for (int mask = 0; mask < kBlades; ++mask) {
            const cplx c = f[i][static_cast<std::uint8_t>(mask)];
            if (c == cplx{}) continue;
            entries.push_back({{"k", k}, {"blade_mask", mask}, {"re", c.real()}, {"im", c.imag()}});
        }
    }
    return {{"truncation", f.kmax()}, {"entries", std::move(entries)}};
}

FormField form_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("truncation") || !j.contains("entries"))
        throw std::invalid_argument("form field needs 'truncation' and 'entries'");
    if (!j["truncation"].is_number_integer()) throw std::invalid_argument("'truncation' must be an integer");
    if (!j["entries"].is_array()) throw std::invalid_argument("'entries' must be an array");

    FormField f(j["truncation"].get<int>());
    std::set<std::pair<std::size_t, int>> seen;
    for (const auto& e : j["entries"]) {
        if (!e.is_object() || !e.contains("k") || !e.contains("blade_mask") || !e.contains("re") || !e.contains("im"))
            throw std::invalid_argument("entry needs k, blade_mask, re, im");
        const auto& k = e["k"];
        if (!k.is_array() || k.size() != 4) throw std::invalid_argument("'k' must hold 4 integers");
        ModeIndex mode{};
        for (int a = 0; a < 4; ++a) {
            if (!k[a].is_number_integer()) throw std::invalid_argument("'k' must hold 4 integers");
            mode[a] = k[a].get<int>();
        }
        if (!f.contains(mode)) throw std::invalid_argument("entry mode outside truncation");
        if (!e["blade_mask"].is_number_integer()) throw std::invalid_argument("'blade_mask' must be an integer");
        const int mask = e["blade_mask"].get<int>();
        if (mask < 0 || mask >= kBlades) throw std::invalid_argument("'blade_mask' must lie in 0..15");
        if (!e["re"].is_number() || !e["im"].is_number()) throw std::invalid_argument("'re' and 'im' must be numbers");
        const std::size_t idx = f.index_of(mode);
        if (!seen.insert({idx, mask}).second) throw std::invalid_argument("duplicate entry");
        f[idx][static_cast<std::uint8_t>(mask)] = cplx(e["re"].get<double>(), e["im"].get<double>());
    }
    return f;
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

FormField read_form(const std::filesystem::path& path) { return form_from_json(read_json(path)); }

void write_form(const std::filesystem::path& path, const FormField& f) { write_json(path, to_json(f)); }

}  // namespace hk
