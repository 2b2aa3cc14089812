#include "hk/zeta_torsion.hpp"

#include <cmath>
#include <numbers>

namespace hk {

namespace {

// zeta'(0) = -log(2 pi) / 2
constexpr double kZetaPrime0 = -0.918938533204672741780329736406;
// zeta'(-1) = 1/12 - log A, A the Glaisher-Kinkelin constant
constexpr double kZetaPrimeMinus1 = -0.165421143700450929213919660243;

RegularizedIntegrand scalar_integrand(const SpectrumModel& m, double weight) {
    RegularizedIntegrand g;
    g.value = [m, weight](double t) { return weight * heat_trace(m, t); };
    g.remainder = [m, weight](double t) { return weight * heat_trace_remainder(m, t); };
    g.singular[-2] = weight * m.leading_coefficient();
    g.singular[0] = -weight * m.kernel_dim();
    return g;
}

}  // namespace

std::string to_string(ZetaMethod m) { return m == ZetaMethod::MellinSplit ? "mellin_split" : "closed_form"; }

ZetaResult log_det_prime_mellin(const SpectrumModel& model, double split) {
    const QuadratureResult q = regularized_integral(scalar_integrand(model, 1.0), split);
    return {q.value, -q.value, ZetaMethod::MellinSplit, q.error_estimate};
}

ZetaResult log_det_prime_closed_form(const SpectrumModel& model) {
    if (!model.untwisted()) throw std::invalid_argument("closed form only covers the untwisted spectrum");
    // Z(s) = sum_{n>=1} r_4(n) n^{-s} = 8 (1 - 4^{1-s}) zeta(s) zeta(s-1), Z(0) = -1
    const double z_prime = (4.0 / 3.0) * std::log(4.0) + 2.0 * kZetaPrime0 + 12.0 * kZetaPrimeMinus1;
    // zeta_Delta(s) = (4 pi^2 c)^{-s} Z(s)
    const double scalar = std::log(4.0 * std::numbers::pi * std::numbers::pi * model.scale) + z_prime;
    const double zp = model.fiber_rank * scalar;
    return {zp, -zp, ZetaMethod::ClosedForm, 1e-15 * std::abs(zp)};
}

ZetaResult log_det_prime(const SpectrumModel& model, double tol) {
    ZetaResult mellin = log_det_prime_mellin(model);
    if (model.untwisted()) {
        const ZetaResult closed = log_det_prime_closed_form(model);
        const double diff = std::abs(mellin.log_det_prime - closed.log_det_prime);
        if (diff > tol)
            throw MethodDisagreement("mellin split " + std::to_string(mellin.log_det_prime) + " vs closed form " +
                                     std::to_string(closed.log_det_prime));
        mellin.error_estimate = std::max(mellin.error_estimate, diff);
    }
    return mellin;
}

SpectrumModel form_laplacian_model(int q, const Vec4& theta) {
    if (q < 0 || q > 2) throw std::invalid_argument("(q,0)-forms on T^4 have q in 0..2");
    return SpectrumModel::make(theta, kFormRanks[q]);
}

double torsion_T(const Vec4& theta) {
    double log_t = 0.0;
    for (int q = 0; q <= 2; ++q) log_t += q * (q % 2 ? -1 : 1) * log_det_prime(form_laplacian_model(q, theta)).log_det_prime;
    return std::exp(log_t);
}

double hyper_torsion(const Vec4& theta) {
    double log_th = 0.0;
    for (int q = 0; q <= 2; ++q) log_th += q * q * (q % 2 ? -1 : 1) * log_det_prime(form_laplacian_model(q, theta)).log_det_prime;
    return std::exp(log_th);
}

double beta0(const Vec4& theta) {
    // Str(sum_C (ad_C)^2 e^{-tD^2}) = sum_q (-1)^q rank_q (-3 (q-1)^2) Tr' e^{-t Delta_scalar}
    double weight = 0.0;
    for (int q = 0; q <= 2; ++q) weight += (q % 2 ? -1 : 1) * kFormRanks[q] * (-3.0 * (q - 1) * (q - 1));
    const SpectrumModel scalar = SpectrumModel::make(theta);
    return regularized_integral(scalar_integrand(scalar, weight)).value;
}

TorsionReport torsion_report(const Vec4& theta) {
    TorsionReport r;
    r.theta = SpectrumModel::make(theta).theta;
    for (int q = 0; q <= 2; ++q) {
        const SpectrumModel m = form_laplacian_model(q, theta);
        r.per_q[q] = log_det_prime(m);
        if (m.untwisted())
            r.method_agreement[q] = std::abs(log_det_prime_mellin(m).log_det_prime - log_det_prime_closed_form(m).log_det_prime);
        const double sign = q % 2 ? -1.0 : 1.0;
        r.log_T += q * sign * r.per_q[q].log_det_prime;
        r.log_T_h += q * q * sign * r.per_q[q].log_det_prime;
    }
    r.T = std::exp(r.log_T);
    r.T_h = std::exp(r.log_T_h);
    r.beta0 = beta0(theta);
    r.det_prime_scalar = std::exp(r.per_q[0].log_det_prime);
    r.residual_T = std::abs(r.T - 1.0);
    r.residual_T_h = std::abs(r.T_h - r.det_prime_scalar * r.det_prime_scalar) / r.T_h;
    r.residual_beta0 = std::abs(r.beta0 - 3.0 * std::log(r.T_h));
    return r;
}

double supertrace_heat(const Vec4& theta, double t) {
    double s = 0.0;
    for (int q = 0; q <= 2; ++q) {
        const SpectrumModel m = form_laplacian_model(q, theta);
        s += (q % 2 ? -1.0 : 1.0) * (heat_trace(m, t) + m.kernel_dim());
    }
    return s;
}

}  // namespace hk
