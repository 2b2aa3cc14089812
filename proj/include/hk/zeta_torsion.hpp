#pragma once

// Zeta-regularized determinants on T^4, analytic torsion, hypertorsion and
// its degree-0 part beta_0 for (q,0)-forms twisted by a flat character.

#include "hk/heat_trace.hpp"

#include <array>
#include <optional>
#include <string>

namespace hk {

enum class ZetaMethod { MellinSplit, ClosedForm };

std::string to_string(ZetaMethod m);

struct ZetaResult {
    double zeta_prime_zero = 0.0;
    double log_det_prime = 0.0;  // = -zeta_prime_zero
    ZetaMethod method = ZetaMethod::MellinSplit;
    double error_estimate = 0.0;
};

class MethodDisagreement : public std::runtime_error {
public:
    explicit MethodDisagreement(const std::string& what) : std::runtime_error(what) {}
};

/// Mellin split of the heat trace at `split`.
ZetaResult log_det_prime_mellin(const SpectrumModel& model, double split = 1.0);

/// Closed form from sum r_4(n) n^{-s} = 8 (1 - 4^{1-s}) zeta(s) zeta(s-1).
/// Throws std::invalid_argument unless the model is untwisted.
ZetaResult log_det_prime_closed_form(const SpectrumModel& model);

/// Mellin result, cross-checked against the closed form when available.
/// Throws MethodDisagreement if the two differ by more than `tol`.
ZetaResult log_det_prime(const SpectrumModel& model, double tol = 1e-8);

// Fiber ranks of (q,0)-forms on T^4.
inline constexpr std::array<int, 3> kFormRanks{1, 2, 1};

/// Delta_q on (q,0)-forms: kFormRanks[q] copies of the twisted scalar Laplacian.
SpectrumModel form_laplacian_model(int q, const Vec4& theta);

struct TorsionReport {
    Vec4 theta = Vec4::Zero();
    std::array<ZetaResult, 3> per_q;
    /// |mellin - closed form| per q, empty when the closed form does not apply.
    std::array<std::optional<double>, 3> method_agreement;
    double log_T = 0.0;
    double log_T_h = 0.0;
    double T = 1.0;
    double T_h = 1.0;
    double beta0 = 0.0;
    double det_prime_scalar = 0.0;  // det' Delta_0
    double residual_T = 0.0;        // |T - 1|
    double residual_T_h = 0.0;      // |T_h - (det' Delta_0)^2| / T_h
    double residual_beta0 = 0.0;    // |beta0 - 3 log T_h|
};

/// prod_q (det' Delta_q)^{q (-1)^q}.
double torsion_T(const Vec4& theta);
/// prod_q (det' Delta_q)^{(-1)^q q^2}.
double hyper_torsion(const Vec4& theta);
/// Regularized integral of Str(sum_C (ad_C)^2 exp(-t D^2)), with
/// (ad_C)^2 = -(q-1)^2 on (q,0)-forms.
double beta0(const Vec4& theta);

TorsionReport torsion_report(const Vec4& theta);

/// sum_q (-1)^q Tr exp(-t Delta_q) including kernels.
double supertrace_heat(const Vec4& theta, double t);

}  // namespace hk
