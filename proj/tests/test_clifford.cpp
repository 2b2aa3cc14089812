#include "hk/clifford_spin.hpp"

#include <doctest.h>

#include <bit>
#include <numbers>
#include <random>

using namespace hk;

namespace {

const cplx kI{0.0, 1.0};

Eigen::Vector4cd basis(int i) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v[i] = 1.0;
    return v;
}

CVec4 random_vector(std::uint64_t seed, bool real) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    CVec4 v;
    for (int a = 0; a < 4; ++a) v[a] = real ? cplx(g(rng), 0.0) : cplx(g(rng), g(rng));
    return v;
}

}  // namespace

TEST_SUITE("clifford_spin") {

TEST_CASE("vacuum and generators") {
    const auto& w = holomorphic_frame();
    const Eigen::Vector4cd vac = basis(0);
    CHECK((clifford_action(w[0]).matrix * vac - std::numbers::sqrt2 * basis(1)).norm() <= 1e-15);
    CHECK((clifford_action(w[0].conjugate()).matrix * vac).norm() <= 1e-15);
    CHECK((clifford_action(w[1].conjugate()).matrix * vac).norm() <= 1e-15);
    CHECK(clifford_action(w[0]).parity == Parity::Odd);
    CHECK(chirality().parity == Parity::Even);
    CHECK_THROWS_AS(clifford_generator(4), std::invalid_argument);
}

TEST_CASE("Clifford relation") {
    CHECK(clifford_relation_defect() <= 1e-14);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CVec4 u = random_vector(seed, false), v = random_vector(seed + 20, false);
        const SpinMat cu = clifford_action(u).matrix, cv = clifford_action(v).matrix;
        const cplx g = (u.transpose() * v)(0, 0);
        CHECK((cu * cv + cv * cu + 2.0 * g * SpinMat::Identity()).norm() <= 1e-13);
    }
}

TEST_CASE("quantization") {
    const Multivector e12 = Multivector::blade(std::uint8_t{0b0011});
    CHECK((quantize(e12).matrix - clifford_generator(0).matrix * clifford_generator(1).matrix).norm() == 0.0);
    CHECK((quantize(Multivector::scalar(2.0)).matrix - 2.0 * SpinMat::Identity()).norm() == 0.0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(tau_map_defect(random_vector(seed, false)) <= 1e-13);
    CHECK(omega_grading_defect() <= 1e-14);
    CHECK(quantize(spin_kahler_form(Structure::I())).parity == Parity::Even);
}

TEST_CASE("chirality") {
    const ChiralityReport r = chirality_report();
    CHECK(r.square_defect <= 1e-14);
    CHECK(r.anticommutation_defect <= 1e-14);
    CHECK(std::abs(r.supertrace) <= 1e-14);
    CHECK(r.grading_defect <= 1e-14);
    // supertrace of Gamma over the degree grading
    cplx str = 0.0;
    const SpinMat g = chirality().matrix;
    for (int i = 0; i < 4; ++i) str += (std::popcount(static_cast<unsigned>(i)) % 2 ? -1.0 : 1.0) * g(i, i);
    CHECK(std::abs(str - 4.0) <= 1e-14);
}

TEST_CASE("sl2 triple") {
    const Sl2Table t = sl2_table();
    for (double r : t.residuals) CHECK(r <= 1e-10);
    CHECK((t.coefficients[0] - Eigen::Vector3cd(0, 2, 0)).norm() <= 1e-12);
    CHECK((t.coefficients[1] - Eigen::Vector3cd(0, 0, -2)).norm() <= 1e-12);
    CHECK((t.coefficients[2] - Eigen::Vector3cd(1, 0, 0)).norm() <= 1e-12);
    const Sl2Triple s = Sl2Triple::standard();
    CHECK((s.e.matrix * basis(0)).norm() > 0.1);  // e raises the vacuum to w1^w2
    CHECK(std::abs((s.e.matrix * basis(0))[3]) > 0.1);
}

TEST_CASE("grading eigenvalues") {
    const auto ev = grading_eigenvalues();
    REQUIRE(ev.size() == 3);
    for (int q = 0; q < 3; ++q) {
        CHECK(std::abs(ev[q].first - (q - 1)) <= 1e-12);
        CHECK(ev[q].second == (q == 1 ? 2 : 1));
    }
}

TEST_CASE("Sp(1) conjugation") {
    CHECK(sp1_conjugation_defect(Vec3::Zero(), random_vector(1, true)) <= 1e-15);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CVec4 r = random_vector(seed + 100, true);
        CHECK(sp1_conjugation_defect(Vec3(r[0].real(), r[1].real(), r[2].real()), random_vector(seed, false)) <= 1e-10);
    }
}

TEST_CASE("e and f as exterior product and contraction with Omega") {
    const OmegaCheck om = omega_operator_check();
    CHECK(std::abs(om.kappa - 2.0) <= 1e-12);
    CHECK(om.e_defect <= 1e-12);
    CHECK(om.f_defect <= 1e-12);
    CHECK(om.subspace_defect <= 1e-12);
    CHECK(std::abs(om.omega_norm2 - 0.25) <= 1e-15);
    CHECK(std::abs(om.f_on_omega - 0.5) <= 1e-12);
    CHECK(om.f_vacuum <= 1e-15);
    CHECK(om.e_vacuum_defect <= 1e-12);
}

TEST_CASE("Dirac operator on the torus") {
    for (const Vec4& th : {Vec4(Vec4::Zero()), Vec4(0.5, 0.0, 0.0, 0.0), Vec4(0.1, 0.3, 0.6, 0.2)}) {
        const DiracReport d = dirac_block_check(th, 3);
        CHECK(d.identification_defect <= 1e-12);
        CHECK(d.square_defect <= 1e-12);
        CHECK(d.parity_defect <= 1e-12);
        CHECK(d.even_odd_balanced);
        CHECK(std::abs(d.min_even_to_odd_singular - 1.0) <= 1e-10);
        CHECK(std::abs(d.supertrace_t1) <= 1e-12);
    }
    CHECK_THROWS_AS(dirac_block_check(Vec4::Zero(), -1), std::invalid_argument);
}

}  // TEST_SUITE
