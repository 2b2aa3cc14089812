#include "hk/spectral_forms.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace hk;

namespace {

constexpr double kPi = std::numbers::pi;

Quaternion rq(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    return {g(rng), g(rng), g(rng), g(rng)};
}

double dot(const Quaternion& x, const Quaternion& y) { return x.w * y.w + x.x * y.x + x.y * y.y + x.z * y.z; }

}  // namespace

TEST_SUITE("spectral_forms") {

TEST_CASE("FormField layout") {
    CHECK_THROWS_AS(FormField(-1), std::invalid_argument);
    const FormField f(2);
    CHECK(f.mode_count() == 625);
    const ModeIndex k{1, -2, 0, 2};
    const std::size_t idx = f.index_of(k);
    CHECK(f.mode_at(idx) == k);
    CHECK(f.mode_at(f.mirror(idx)) == ModeIndex{-1, 2, 0, -2});
    CHECK_THROWS_AS(f.index_of({3, 0, 0, 0}), std::out_of_range);
    CHECK_FALSE(f.contains({0, 0, -3, 0}));
    std::size_t count = 0;
    for_each_mode(2, [&](std::size_t i, const Vec4& v) {
        const ModeIndex m = f.mode_at(i);
        CHECK(v == Vec4(m[0], m[1], m[2], m[3]));
        ++count;
    });
    CHECK(count == f.mode_count());
}

TEST_CASE("d on single modes") {
    CHECK(exterior_d(FormField::constant(2, Multivector::scalar(1.0))).norm() == 0.0);
    const FormField f = FormField::single_mode(1, {1, 0, 0, 0}, Multivector::scalar(1.0));
    const FormField df = exterior_d(f);
    CHECK(std::abs(df.at({1, 0, 0, 0})[0b0001] - cplx(0.0, 2 * kPi)) <= 1e-15);
    CHECK(std::abs(df.norm() - 2 * kPi) <= 1e-14);
    CHECK(df.top_degree() == 1);
}

TEST_CASE("d d = 0, d_C d_C = 0, {d, d_C} = 0 and both d_C realizations agree") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const FormField a = random_field(2, seed);
        const double scale = a.norm() * 16.0 * kPi * kPi * 16.0;
        CHECK(exterior_d(exterior_d(a)).norm() <= 1e-12 * scale);
        for (const auto& c : generators()) {
            CHECK(relative_residual(twisted_d(c, a), twisted_d_commutator(c, a)) <= 1e-11);
            CHECK(cancellation_residual(exterior_d(twisted_d(c, a)), twisted_d(c, exterior_d(a))) <= 1e-11);
            CHECK(twisted_d(c, twisted_d(c, a)).norm() <= 1e-12 * scale);
        }
    }
    CHECK(twisted_d(Structure::I(), FormField::constant(1, Multivector::scalar(1.0))).norm() == 0.0);
}

TEST_CASE("quaternionic d") {
    const FormField a = random_field(2, 7);
    CHECK(relative_residual(quaternionic_d(Quaternion::one(), a), exterior_d(a)) == 0.0);
    CHECK(relative_residual(quaternionic_d(Quaternion::i(), a), twisted_d(Structure::I(), a)) <= 1e-13);
    const Quaternion x = rq(3);
    const FormField sum = x.w * exterior_d(a) + x.x * twisted_d(Structure::I(), a) + x.y * twisted_d(Structure::J(), a) +
                          x.z * twisted_d(Structure::K(), a);
    CHECK(relative_residual(quaternionic_d(x, a), sum) <= 1e-13);
    CHECK(relative_residual(hat(Quaternion::one(), a), grading(a)) == 0.0);
}

TEST_CASE("quaternionic relations on random fields") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const FormField a = random_field(3, seed);
        const Quaternion x = rq(100 + seed), y = rq(200 + seed);
        const OperatorLabel ly = OperatorLabel::d_x(y);
        CHECK(relative_residual(hat(x, quaternionic_d(y, a)) - quaternionic_d(y, hat(x, a)), quaternionic_d(x * y, a)) <= 1e-10);
        CHECK(cancellation_residual(quaternionic_d(x, quaternionic_d(y, a)), quaternionic_d(y, quaternionic_d(x, a))) <= 1e-10);
        CHECK(relative_residual(quaternionic_d(x, adjoint_d(ly, a)) + adjoint_d(ly, quaternionic_d(x, a)), dot(x, y) * laplacian(a)) <=
              1e-10);
    }
}

TEST_CASE("[N, d] = d") {
    const FormField a = random_field(2, 8);
    CHECK(relative_residual(grading(exterior_d(a)) - exterior_d(grading(a)), exterior_d(a)) <= 1e-13);
}

TEST_CASE("adjoints") {
    CHECK(adjoint_d(OperatorLabel::d(), FormField::constant(2, Multivector::volume())).norm() == 0.0);
    std::vector<OperatorLabel> labels{OperatorLabel::d(), OperatorLabel::d_x(rq(1))};
    for (const auto& c : generators()) labels.push_back(OperatorLabel::d_c(c));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const FormField a = random_field(2, seed), b = random_field(2, seed + 50);
        for (const auto& l : labels) {
            const FormField da = apply(l, a);
            CHECK(std::abs(inner(da, b) - inner(a, adjoint_d(l, b))) <= 1e-11 * da.norm() * b.norm());
            CHECK(relative_residual(apply(l.adjoint(), b), adjoint_d(l, b)) == 0.0);
        }
    }
    OperatorLabel n{OpKind::Grading};
    CHECK_THROWS_AS(adjoint_d(n, random_field(1, 1)), std::invalid_argument);
}

TEST_CASE("Laplacian, Green operator and harmonic projector") {
    const ModeIndex k{1, -2, 0, 1};
    const Multivector blade = Multivector::blade(std::uint8_t{0b0110});
    const FormField f = FormField::single_mode(2, k, blade);
    // single-mode oracle: (d d^* + d^* d) e_k blade = 4 pi^2 |k|^2 e_k blade
    const double lambda = 4 * kPi * kPi * 6.0;
    CHECK(relative_residual(laplacian_of(OperatorLabel::d(), f), lambda * f) <= 1e-14);
    CHECK(relative_residual(laplacian(f), lambda * f) == 0.0);
    CHECK(laplacian(FormField::constant(2, blade)).norm() == 0.0);
    CHECK(green(FormField::constant(2, blade)).norm() == 0.0);
    CHECK(harmonic_project(f).norm() == 0.0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const FormField a = random_field(2, seed);
        CHECK(relative_residual(harmonic_project(a) + laplacian(green(a)), a) <= 1e-12);
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const FormField a = random_field(2, seed);
        CHECK(relative_residual(laplacian_of(OperatorLabel::d(), a), laplacian(a)) <= 1e-10);
        for (const auto& c : generators()) CHECK(relative_residual(laplacian_of(OperatorLabel::d_c(c), a), laplacian(a)) <= 1e-10);
    }
}

TEST_CASE("Kodaira identities") {
    for (const auto& r : kodaira_suite(FormField::constant(2, Multivector::volume()))) CHECK(r.residual == 0.0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto res = kodaira_suite(random_field(2, seed));
        CHECK(res.size() == 10);
        for (const auto& r : res) {
            INFO(r.name);
            CHECK(r.residual <= 1e-10);
        }
    }
}

TEST_CASE("conjugation law") {
    const FormField a = random_field(2, 3);
    CHECK(conjugation_law(Quaternion::one(), rq(1), a) <= 1e-15);
    CHECK(conjugation_law(Quaternion::i(), Quaternion::one(), a) <= 1e-10);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Quaternion u = rq(seed + 10);
        u = (1.0 / u.norm()) * u;
        CHECK(conjugation_law(u, rq(seed + 20), a) <= 1e-10);
    }
}

TEST_CASE("random fields") {
    const FormField a = random_field(2, 42), b = random_field(2, 42), c = random_field(2, 43);
    CHECK((a - b).norm() == 0.0);
    CHECK((a - c).norm() > 0.0);
    CHECK_FALSE(a.is_real(1e-12));
    const FormField r = random_field(2, 5, true);
    CHECK(r.is_real());
    for (const FormField& x : {exterior_d(r), twisted_d(Structure::J(), r), laplacian(r), green(r), harmonic_project(r)})
        CHECK(x.is_real(1e-12 * x.max_abs()));
    const FormField d2 = random_field_of_degree(2, 2, 9);
    CHECK(d2.top_degree() == 2);
    CHECK((d2.grade(2) - d2).norm() == 0.0);
    CHECK(invariance_defect(random_invariant_field(2, 11)) <= 1e-11);
}

TEST_CASE("operator labels") {
    CHECK(OperatorLabel::d().name() == "d");
    CHECK(OperatorLabel::d_c(Structure::K()).name() == "d_K");
    CHECK(OperatorLabel::d_c(Structure::K()).adjoint().name() == "d_K*");
    OperatorLabel lam{OpKind::LefschetzDual, Quaternion::one(), Vec3(0, 1, 0)};
    CHECK(lam.name() == "Lambda_J");
    CHECK(lam.adjoint().kind == OpKind::Lefschetz);
    const FormField a = random_field(1, 1);
    CHECK(relative_residual(apply(lam, a), apply_fiber(lefschetz_dual_op(Structure::J()), a)) == 0.0);
    CHECK(relative_residual(apply({OpKind::Green}, a), green(a)) == 0.0);
    CHECK(relative_residual(apply({OpKind::Hat, Quaternion::k()}, a), hat(Quaternion::k(), a)) == 0.0);
}

TEST_CASE("recycled storage starts from zero") {
    for (int round = 0; round < 40; ++round) {
        const int k = round % 3;
        FormField f = random_field(k, round);
        FormField g(k);
        CHECK(g.norm() == 0.0);
        g = f;
        CHECK(relative_residual(g, f) == 0.0);
    }
}

}  // TEST_SUITE
