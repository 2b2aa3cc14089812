#include "hk/report.hpp"

#include "hk/form_io.hpp"

#include <cmath>
#include <stdexcept>

namespace hk {

namespace {

constexpr const char* kCliffordSchema = "hktorus.clifford/1";

nlohmann::json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json vec4_json(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

// I, J, K and their Kähler forms as blade-mask -> coefficient maps.
nlohmann::json structures_json() {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& c : generators()) {
        const Mat4 m = c.matrix();
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < 4; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2), m(r, 3)});
        nlohmann::json omega = nlohmann::json::object();
        const Multivector w = kahler_form(c);
        for (int mask = 0; mask < kBlades; ++mask)
            if (w[static_cast<std::uint8_t>(mask)] != cplx{}) omega[std::to_string(mask)] = w[static_cast<std::uint8_t>(mask)].real();
        out[c.name()] = {{"matrix", rows}, {"kahler_form", omega}};
    }
    return out;
}

// Throws unless j[key] exists and satisfies pred.
template <class Pred>
void require(const nlohmann::json& j, const char* key, Pred pred, const char* what) {
    if (!j.is_object() || !j.contains(key) || !pred(j.at(key)))
        throw std::invalid_argument(std::string("report field '") + key + "' missing or not " + what);
}

const auto is_number = [](const nlohmann::json& v) { return v.is_number(); };
const auto is_nonneg = [](const nlohmann::json& v) { return v.is_number() && v.get<double>() >= 0.0; };
const auto is_bool = [](const nlohmann::json& v) { return v.is_boolean(); };
const auto is_array = [](const nlohmann::json& v) { return v.is_array(); };
const auto is_object = [](const nlohmann::json& v) { return v.is_object(); };
const auto is_string = [](const nlohmann::json& v) { return v.is_string(); };

void validate_verify(const nlohmann::json& j) {
    require(j, "config", is_object, "an object");
    require(j, "checks", is_array, "an array");
    require(j, "passed", is_bool, "a boolean");
    require(j, "max_residual", is_nonneg, "a nonnegative number");
    require(j, "structures", is_object, "an object");
    bool all = true;
    for (const auto& c : j["checks"]) {
        require(c, "suite", is_string, "a string");
        require(c, "name", is_string, "a string");
        require(c, "residual", is_number, "a number");
        require(c, "tolerance", is_nonneg, "a nonnegative number");
        require(c, "passed", is_bool, "a boolean");
        all = all && c["passed"].get<bool>();
    }
    if (all != j["passed"].get<bool>()) throw std::invalid_argument("'passed' disagrees with the checks");
    if (!all) require(j, "first_failure", is_string, "a string");
}

void validate_transgress(const nlohmann::json& j) {
    require(j, "order", [](const nlohmann::json& v) { return v.is_number_integer() && (v == 1 || v == 2 || v == 4); }, "1, 2 or 4");
    require(j, "sign", [](const nlohmann::json& v) { return v.is_number_integer() && (v == 1 || v == -1); }, "+1 or -1");
    require(j, "residual", is_nonneg, "a nonnegative number");
    require(j, "precondition_residuals", is_object, "an object");
    require(j, "potential", is_object, "an object");
    form_from_json(j["potential"]);
}

void validate_torsion(const nlohmann::json& j) {
    require(j, "theta", [](const nlohmann::json& v) { return v.is_array() && v.size() == 4; }, "a 4-vector");
    require(j, "per_q", [](const nlohmann::json& v) { return v.is_array() && v.size() == 3; }, "an array of 3");
    for (const auto& q : j["per_q"]) {
        require(q, "q", is_number, "a number");
        require(q, "log_det_prime", is_number, "a number");
        require(q, "det_prime", is_nonneg, "a nonnegative number");
        if (!q.contains("method_agreement") || !(q["method_agreement"].is_null() || q["method_agreement"].is_number()))
            throw std::invalid_argument("report field 'method_agreement' must be a number or null");
    }
    for (const char* k : {"T", "T_h", "beta0", "det_prime_delta0"}) require(j, k, is_number, "a number");
    require(j, "identity_residuals", is_object, "an object");
    for (const char* k : {"T_minus_1", "T_h_vs_det0_squared", "beta0_vs_3_log_T_h"})
        require(j["identity_residuals"], k, is_nonneg, "a nonnegative number");
}

void validate_lapl(const nlohmann::json& j) {
    require(j, "modes", is_array, "an array");
    require(j, "per_mode", is_array, "an array");
    if (j["modes"].size() != j["per_mode"].size()) throw std::invalid_argument("modes and per_mode differ in length");
    require(j, "measured_constant", is_number, "a number");
    require(j, "spread", is_nonneg, "a nonnegative number");
    require(j, "reference_values", is_object, "an object");
}

void validate_clifford(const nlohmann::json& j) {
    for (const char* k : {"clifford_relation_defect", "chirality_defect"}) require(j, k, is_nonneg, "a nonnegative number");
    require(j, "sl2_table", is_array, "an array");
    require(j, "grading_eigenvalues", is_array, "an array");
    require(j, "dirac_block_defects", is_object, "an object");
}

}  // namespace

nlohmann::json verify_report(const RunConfig& config, const std::vector<CheckResult>& checks) {
    nlohmann::json list = nlohmann::json::array();
    bool passed = true;
    double worst = 0.0;
    std::string first;
    for (const auto& c : checks) {
        nlohmann::json e{{"suite", c.suite}, {"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"passed", c.passed}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        list.push_back(std::move(e));
        if (std::isfinite(c.residual)) worst = std::max(worst, c.residual);
        if (!c.passed && passed) {
            passed = false;
            first = c.suite + "/" + c.name;
        }
    }
    nlohmann::json j{{"schema", kVerifySchema}, {"config", to_json(config)}, {"checks", std::move(list)}, {"passed", passed}, {"max_residual", worst}};
    j["structures"] = structures_json();
    j["first_failure"] = passed ? nlohmann::json(nullptr) : nlohmann::json(first);
    return j;
}

nlohmann::json transgression_report(const TransgressionResult& r) {
    nlohmann::json pre = nlohmann::json::object();
    for (const auto& p : r.precondition_residuals) pre[p.name] = p.residual;
    return {{"schema", kTransgressSchema}, {"order", r.order},   {"sign", r.sign},
            {"residual", r.residual},     {"potential", to_json(r.potential)}, {"precondition_residuals", pre}};
}

nlohmann::json torsion_report_json(const TorsionReport& r) {
    nlohmann::json per_q = nlohmann::json::array();
    for (int q = 0; q <= 2; ++q) {
        per_q.push_back({{"q", q},
                         {"fiber_rank", kFormRanks[q]},
                         {"log_det_prime", r.per_q[q].log_det_prime},
                         {"det_prime", std::exp(r.per_q[q].log_det_prime)},
                         {"error_estimate", r.per_q[q].error_estimate},
                         {"method_agreement", r.method_agreement[q] ? nlohmann::json(*r.method_agreement[q]) : nlohmann::json(nullptr)}});
    }
    return {{"schema", kTorsionSchema},
            {"theta", vec4_json(r.theta)},
            {"per_q", per_q},
            {"T", r.T},
            {"log_T", r.log_T},
            {"T_h", r.T_h},
            {"log_T_h", r.log_T_h},
            {"beta0", r.beta0},
            {"det_prime_delta0", r.det_prime_scalar},
            {"identity_residuals",
             {{"T_minus_1", r.residual_T}, {"T_h_vs_det0_squared", r.residual_T_h}, {"beta0_vs_3_log_T_h", r.residual_beta0}}}};
}

nlohmann::json lapl_report(const LaplConstant& c) {
    nlohmann::json modes = nlohmann::json::array();
    for (const auto& k : c.modes) modes.push_back(k);
    return {{"schema", kLaplSchema},
            {"modes", modes},
            {"per_mode", c.per_mode},
            {"measured_constant", c.value},
            {"spread", c.spread},
            {"proportionality_defect", c.proportionality_defect},
            {"reference_values", {{"stated", 16}, {"derived", 1}}},
            {"note", "the reference values 16 and 1 disagree; measured_constant is "
                     "d d_I d_J d_K phi / (vol Delta^2 phi) on single Fourier modes"}};
}

nlohmann::json clifford_report() {
    const ChiralityReport ch = chirality_report();
    nlohmann::json table = nlohmann::json::array();
    const Sl2Table t = sl2_table();
    for (int i = 0; i < 3; ++i)
        table.push_back({{"bracket", t.names[i]},
                         {"h", complex_json(t.coefficients[i][0])},
                         {"e", complex_json(t.coefficients[i][1])},
                         {"f", complex_json(t.coefficients[i][2])},
                         {"residual", t.residuals[i]}});
    nlohmann::json ev = nlohmann::json::array();
    for (const auto& [value, mult] : grading_eigenvalues()) ev.push_back({{"eigenvalue", value}, {"multiplicity", mult}});
    const OmegaCheck om = omega_operator_check();
    nlohmann::json dirac = nlohmann::json::object();
    for (const auto& [name, theta] : {std::pair{"untwisted", Vec4(Vec4::Zero())}, std::pair{"half_twist", Vec4(0.5, 0.0, 0.0, 0.0)}}) {
        const DiracReport d = dirac_block_check(theta, 3);
        dirac[name] = {{"theta", vec4_json(theta)},
                       {"kmax", d.kmax},
                       {"identification_defect", d.identification_defect},
                       {"square_defect", d.square_defect},
                       {"parity_defect", d.parity_defect},
                       {"even_odd_balanced", d.even_odd_balanced},
                       {"supertrace_t1", d.supertrace_t1}};
    }
    return {{"schema", kCliffordSchema},
            {"clifford_relation_defect", clifford_relation_defect()},
            {"chirality_defect", std::max({ch.square_defect, ch.anticommutation_defect, ch.grading_defect})},
            {"chirality_supertrace", complex_json(ch.supertrace)},
            {"sl2_table", table},
            {"grading_eigenvalues", ev},
            {"omega_identification",
             {{"kappa", om.kappa}, {"e_defect", om.e_defect}, {"f_defect", om.f_defect}, {"omega_norm2", om.omega_norm2}}},
            {"dirac_block_defects", dirac}};
}

void validate_report(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string()) throw std::invalid_argument("report has no schema tag");
    const std::string s = j["schema"];
    if (s == kVerifySchema) validate_verify(j);
    else if (s == kTransgressSchema) validate_transgress(j);
    else if (s == kTorsionSchema) validate_torsion(j);
    else if (s == kLaplSchema) validate_lapl(j);
    else if (s == kCliffordSchema) validate_clifford(j);
    else throw std::invalid_argument("unknown report schema '" + s + "'");
}

}  // namespace hk
