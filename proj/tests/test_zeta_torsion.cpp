#include "hk/zeta_torsion.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hk;

namespace {

constexpr double kPi = std::numbers::pi;

// 30-digit reference values.
constexpr double kLogDetUntwisted = -1.7012158234971218248;
constexpr double kLogDetHalfTwist = -0.26267977150748772558;
constexpr double kTraceAtOne = 5.72573266814881360843e-17;   // sum_k e^{-4 pi^2 |k|^2} - 1
constexpr double kFullTraceAtTenth = 1.163540137132206606029527194;  // sum_k e^{-0.4 pi^2 |k|^2}

const Vec4 kHalf(0.5, 0.0, 0.0, 0.0);

}  // namespace

TEST_SUITE("zeta_torsion") {

TEST_CASE("spectrum models") {
    const SpectrumModel m = SpectrumModel::make(Vec4(1.25, -0.25, 2.0, 0.0), 2);
    CHECK(m.theta.isApprox(Vec4(0.25, 0.75, 0.0, 0.0)));
    CHECK(m.kernel_dim() == 0);
    CHECK(SpectrumModel::make(Vec4::Zero(), 2).kernel_dim() == 2);
    CHECK(SpectrumModel::make(Vec4(1.0, 0, 0, 0)).untwisted());
    CHECK_THROWS_AS(SpectrumModel::make(Vec4::Zero(), 0), std::invalid_argument);
    CHECK_THROWS_AS(SpectrumModel::make(Vec4::Zero(), 1, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectrumModel::make(Vec4(NAN, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("eigenvalue enumeration counts r_4(n)") {
    const auto ev = enumerate_eigenvalues(SpectrumModel::make(Vec4::Zero()), 1.5);
    REQUIRE(ev.size() == 2);
    CHECK(std::abs(ev[0].first - 4 * kPi * kPi) <= 1e-12);
    CHECK(ev[0].second == 8);
    CHECK(std::abs(ev[1].first - 8 * kPi * kPi) <= 1e-12);
    CHECK(ev[1].second == 24);
    const auto ev2 = enumerate_eigenvalues(SpectrumModel::make(Vec4::Zero(), 2), 1.1);
    CHECK(ev2[0].second == 16);
}

TEST_CASE("heat trace oracles") {
    const SpectrumModel m = SpectrumModel::make(Vec4::Zero());
    CHECK(std::abs(heat_trace(m, 1.0) - kTraceAtOne) <= 1e-10 * kTraceAtOne);
    CHECK(std::abs(heat_trace(m, 0.1) + 1.0 - kFullTraceAtTenth) <= 1e-13);
    CHECK(std::abs(heat_trace(m, 1.0) - heat_trace_direct(m, 1.0, 3.0)) <= 1e-25);
    CHECK(heat_trace(m, 50.0) == 0.0);
    CHECK_THROWS_AS(heat_trace(m, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(heat_trace_direct(m, 0.01, 1.0), TruncationInsufficient);
}

TEST_CASE("heat trace is continuous across the Poisson switch") {
    for (const Vec4& th : {Vec4(Vec4::Zero()), kHalf, Vec4(0.3, 0.1, 0.7, 0.45)}) {
        const SpectrumModel m = SpectrumModel::make(th, 1);
        const double a = heat_trace(m, 0.05 * (1 - 1e-12)), b = heat_trace(m, 0.05);
        CHECK(std::abs(a - b) <= 1e-10 * b);  // t itself moves by 1e-12
        CHECK(std::abs(heat_trace(m, 0.2) - heat_trace_direct(m, 0.2, 5.0)) <= 1e-13);
        CHECK(std::abs(heat_trace(m, 0.03) - heat_trace_direct(m, 0.03, 8.0)) <= 1e-12 * heat_trace(m, 0.03));
    }
}

TEST_CASE("heat trace remainder is the exponentially small part") {
    const SpectrumModel m = SpectrumModel::make(Vec4::Zero(), 2);
    const double t = 0.04;
    const double direct = heat_trace(m, t) - m.leading_coefficient() / (t * t) + m.kernel_dim();
    CHECK(std::abs(heat_trace_remainder(m, t) - direct) <= 1e-9);
    CHECK(heat_trace_remainder(m, 1e-4) == 0.0);
    CHECK(std::abs(m.leading_coefficient() - 2.0 / (16 * kPi * kPi)) <= 1e-18);
}

TEST_CASE("regularized integral") {
    for (double h : {0.5, 2.0, 10.0}) {
        const RegularizedIntegrand g{[h](double t) { return std::exp(-t * h); }, {{0, 1.0}}, {}};
        CHECK(std::abs(regularized_integral(g).value + std::log(h)) <= 1e-10);
    }
    const RegularizedIntegrand second_order{[](double t) { return (9 * t * t - 6 * t) * std::exp(-3 * t); }, {}, {}};
    CHECK(std::abs(regularized_integral(second_order).value + 1.0) <= 1e-9);
    const RegularizedIntegrand ful{[](double t) { return -t * std::exp(-t); }, {}, {}};
    CHECK(std::abs(regularized_integral(ful).value + 1.0) <= 1e-9);
    // t d/dt (e^{-t}/t) = -e^{-t} - e^{-t}/t, expansion -1/t + 0 + O(t)
    const RegularizedIntegrand pole{[](double t) { return -std::exp(-t) - std::exp(-t) / t; },
                                    {{-1, -1.0}, {0, 0.0}},
                                    [](double t) { return -std::exp(-t) - std::expm1(-t) / t; }};
    for (double split : {0.5, 1.0, 3.0}) CHECK(std::abs(regularized_integral(pole, split).value - 1.0) <= 1e-10);
    const RegularizedIntegrand conv{[](double t) { return std::exp(-t) - std::exp(-2 * t); }, {}, {}};
    CHECK(std::abs(regularized_integral(conv).value - std::log(2.0)) <= 1e-10);

    CHECK_THROWS_AS(regularized_integral(conv, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(regularized_integral({conv.value, {{1, 1.0}}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(regularized_integral({[](double) { return NAN; }, {}, {}}), QuadratureFailure);
}

TEST_CASE("log det' oracles") {
    const SpectrumModel m0 = SpectrumModel::make(Vec4::Zero());
    CHECK(std::abs(log_det_prime_closed_form(m0).log_det_prime - kLogDetUntwisted) <= 1e-13);
    CHECK(std::abs(log_det_prime_mellin(m0).log_det_prime - kLogDetUntwisted) <= 1e-10);
    for (double split : {0.5, 2.0}) CHECK(std::abs(log_det_prime_mellin(m0, split).log_det_prime - kLogDetUntwisted) <= 1e-10);
    const ZetaResult z = log_det_prime(m0);
    CHECK(z.method == ZetaMethod::MellinSplit);
    CHECK(z.zeta_prime_zero == -z.log_det_prime);
    CHECK(std::abs(log_det_prime(SpectrumModel::make(kHalf)).log_det_prime - kLogDetHalfTwist) <= 1e-10);
    CHECK_THROWS_AS(log_det_prime_closed_form(SpectrumModel::make(kHalf)), std::invalid_argument);
    CHECK(to_string(ZetaMethod::ClosedForm) == "closed_form");
}

TEST_CASE("log det' scaling laws") {
    const double l0 = log_det_prime(SpectrumModel::make(Vec4::Zero())).log_det_prime;
    CHECK(std::abs(log_det_prime(SpectrumModel::make(Vec4::Zero(), 3)).log_det_prime - 3 * l0) <= 1e-10);
    // zeta(0) = -kernel_dim, so scaling by c shifts log det' by -kernel_dim log c
    CHECK(std::abs(log_det_prime(SpectrumModel::make(Vec4::Zero(), 1, 2.0)).log_det_prime - (l0 - std::log(2.0))) <= 1e-8);
    const double lh = log_det_prime(SpectrumModel::make(kHalf)).log_det_prime;
    CHECK(std::abs(log_det_prime(SpectrumModel::make(kHalf, 1, 2.0)).log_det_prime - lh) <= 1e-8);
}

TEST_CASE("torsion identities") {
    for (const Vec4& th : {Vec4(Vec4::Zero()), kHalf, Vec4(0.2, 0.4, 0.0, 0.9)}) {
        const TorsionReport r = torsion_report(th);
        CHECK(r.residual_T <= 1e-8);
        CHECK(r.residual_T_h <= 1e-8);
        CHECK(r.residual_beta0 <= 1e-6);
        CHECK(std::abs(torsion_T(th) - 1.0) <= 1e-8);
        CHECK(std::abs(hyper_torsion(th) - r.det_prime_scalar * r.det_prime_scalar) <= 1e-8 * r.T_h);
        CHECK(std::abs(beta0(th) - 3 * std::log(hyper_torsion(th))) <= 1e-6);
        CHECK(r.det_prime_scalar > 0.0);
    }
    const TorsionReport r0 = torsion_report(Vec4::Zero());
    for (int q = 0; q < 3; ++q) {
        REQUIRE(r0.method_agreement[q].has_value());
        CHECK(*r0.method_agreement[q] <= 1e-8);
    }
    CHECK_FALSE(torsion_report(kHalf).method_agreement[0].has_value());
    CHECK(std::abs(r0.log_T_h - 2 * kLogDetUntwisted) <= 1e-9);
}

TEST_CASE("exponent arithmetic on a toy spectrum") {
    // ranks (1,2,1) of one scalar determinant D: T = D^{-2} D^{2}, T_h = D^{-2} D^{4}
    const double logD = 0.37;
    double logT = 0.0, logTh = 0.0, beta = 0.0;
    for (int q = 0; q < 3; ++q) {
        const double s = q % 2 ? -1.0 : 1.0;
        logT += q * s * kFormRanks[q] * logD;
        logTh += q * q * s * kFormRanks[q] * logD;
        beta += s * kFormRanks[q] * 3.0 * (q - 1) * (q - 1) * logD;
    }
    CHECK(logT == 0.0);
    CHECK(std::abs(logTh - 2 * logD) <= 1e-15);
    CHECK(std::abs(beta - 3 * logTh) <= 1e-15);
}

TEST_CASE("supertrace cancels") {
    for (double t : {0.1, 1.0, 10.0}) {
        CHECK(supertrace_heat(Vec4::Zero(), t) == 0.0);
        CHECK(supertrace_heat(kHalf, t) == 0.0);
    }
}

TEST_CASE("form Laplacian models") {
    CHECK(form_laplacian_model(1, Vec4::Zero()).fiber_rank == 2);
    CHECK_THROWS_AS(form_laplacian_model(3, Vec4::Zero()), std::invalid_argument);
}

}  // TEST_SUITE
