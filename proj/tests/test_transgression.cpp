#include "hk/transgression.hpp"

#include <doctest.h>

#include <numbers>

using namespace hk;

TEST_SUITE("transgression") {

TEST_CASE("zero target") {
    const FormField z(2);
    for (const auto& r : {transgress1(z), transgress2(Structure::I(), z), transgress4(z)}) {
        CHECK(r.potential.norm() == 0.0);
        CHECK(r.residual == 0.0);
    }
}

TEST_CASE("order 1") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const TransgressionResult r = transgress1(exterior_d(random_field(3, seed, true)));
        CHECK(r.order == 1);
        CHECK(r.sign == 1);
        CHECK(r.residual <= 1e-9);
        CHECK(r.potential.is_real(1e-12 * r.potential.max_abs()));
    }
    const FormField vol = FormField::constant(2, Multivector::volume());
    try {
        transgress1(vol);
        FAIL("expected NotExact");
    } catch (const PreconditionError& e) {
        CHECK(e.kind() == PreconditionKind::NotExact);
    }
    const FormField open = FormField::single_mode(2, {1, 0, 0, 0}, Multivector::scalar(1.0));
    try {
        transgress1(open);
        FAIL("expected NotClosed");
    } catch (const PreconditionError& e) {
        CHECK(e.kind() == PreconditionKind::NotClosed);
        CHECK(e.residual() > 0.1);
    }
}

TEST_CASE("order 2") {
    for (const auto& c : generators()) {
        const TransgressionResult r = transgress2(c, exterior_d(twisted_d(c, random_field(3, 4))));
        CHECK(r.sign == -1);
        CHECK(r.residual <= 1e-9);
        REQUIRE(r.precondition_residuals.size() == 3);
        CHECK(r.precondition_residuals[2].name == "d_" + c.name());
    }
    int rejected = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        try {
            transgress2(Structure::I(), exterior_d(random_field(2, seed)));
        } catch (const PreconditionError& e) {
            rejected += e.kind() == PreconditionKind::NotDCClosed && e.structure() == "I";
        }
    }
    CHECK(rejected == 10);
}

TEST_CASE("order 4 round trips") {
    const TransgressionResult inv = transgress4(hyper_d(random_invariant_field(3, 5, true)));
    CHECK(inv.residual <= 1e-8);
    CHECK(inv.sign == 1);
    const TransgressionResult gen = transgress4(hyper_d(random_field(3, 6)));
    CHECK(gen.residual <= 1e-8);
    CHECK(gen.potential.top_degree(1e-12 * gen.potential.max_abs()) == 0);
}

TEST_CASE("order 4 inverts the bi-Laplacian on functions") {
    // d d_I d_J d_K f = vol Delta^2 f, so tau recovers f up to its mean
    FormField f = random_field_of_degree(3, 0, 12, true);
    const FormField target = [&] {
        FormField t = laplacian(laplacian(f));
        for (std::size_t i = 0; i < t.mode_count(); ++i) t[i] = wedge(Multivector::volume(), t[i]);
        return t;
    }();
    const TransgressionResult r = transgress4(target);
    CHECK(r.residual <= 1e-8);
    f.at({0, 0, 0, 0}) = Multivector();
    CHECK(relative_residual(r.potential, f) <= 1e-10);
}

TEST_CASE("frozen signs reproduce the target and flipped signs negate it") {
    const FormField t1 = exterior_d(random_field(2, 1));
    CHECK(relative_residual(exterior_d(adjoint_d(OperatorLabel::d(), green(t1))), t1) <= 1e-10);

    const Structure c = Structure::J();
    const FormField t2 = exterior_d(twisted_d(c, random_field(2, 2)));
    const FormField chi_plus = adjoint_d(OperatorLabel::d(), adjoint_d(OperatorLabel::d_c(c), green(green(t2))));
    CHECK(relative_residual(exterior_d(twisted_d(c, chi_plus)), -1.0 * t2) <= 1e-10);
    CHECK(kTransgressionSign2 == -1);

    const FormField t4 = hyper_d(random_field(2, 3));
    FormField g4 = t4;
    for (int n = 0; n < 4; ++n) g4 = green(g4);
    CHECK(relative_residual(hyper_d(hyper_d_adjoint(g4)), t4) <= 1e-10);
    CHECK(kTransgressionSign1 == 1);
    CHECK(kTransgressionSign4 == 1);
}

TEST_CASE("order 4 preconditions") {
    auto kind_of = [](const FormField& t) -> std::optional<PreconditionKind> {
        try {
            transgress4(t);
        } catch (const PreconditionError& e) {
            return e.kind();
        }
        return std::nullopt;
    };
    CHECK(kind_of(FormField::constant(2, Multivector::volume())) == PreconditionKind::NotExact);
    const FormField vol_harmonic = FormField::constant(2, Multivector::volume()) + hyper_d(random_field(2, 1));
    CHECK(kind_of(vol_harmonic) == PreconditionKind::NotExact);
    CHECK(kind_of(FormField::single_mode(2, {0, 1, 0, 0}, Multivector::scalar(1.0))) == PreconditionKind::NotClosed);
    CHECK(kind_of(exterior_d(random_field_of_degree(2, 0, 3))) == PreconditionKind::DegreeTooLow);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        try {
            transgress4(exterior_d(random_field(2, seed)));
            FAIL("generic exact form accepted");
        } catch (const PreconditionError& e) {
            CHECK(e.kind() == PreconditionKind::NotDCClosed);
            CHECK(e.structure() == "I");
            CHECK(std::string(e.what()).find("NotDCClosed(I)") == 0);
        }
    }
}

TEST_CASE("lapl constant") {
    // symbolic single-mode oracle: d d_I d_J d_K e^{2 pi i x1} = (2 pi)^4 vol e^{2 pi i x1}
    const LaplConstant one = measure_lapl_constant({{1, 0, 0, 0}});
    CHECK(std::abs(one.value - 1.0) <= 1e-12);
    const LaplConstant several = measure_lapl_constant({{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 1, 1}});
    CHECK(several.spread <= 1e-10);
    CHECK(std::abs(several.value - 1.0) <= 1e-12);
    CHECK(several.proportionality_defect <= 1e-12);
    const LaplConstant many = measure_lapl_constant(default_lapl_modes(25));
    CHECK(many.per_mode.size() == 25);
    CHECK(many.spread <= 1e-10);
    CHECK_THROWS_AS(measure_lapl_constant({}), std::invalid_argument);
    CHECK_THROWS_AS(measure_lapl_constant({{0, 0, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(measure_lapl_constant({{1, 0, 0, 0}, {0, 2, 0, 1}}, -1.0), InconsistentConstant);
}

TEST_CASE("default lapl modes") {
    const auto m = default_lapl_modes(20);
    REQUIRE(m.size() == 20);
    CHECK(m[0] == ModeIndex{0, 0, 0, 1});
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            CHECK(m[i] != m[j]);
            CHECK(m[i] != ModeIndex{-m[j][0], -m[j][1], -m[j][2], -m[j][3]});
        }
    CHECK_THROWS_AS(default_lapl_modes(0), std::invalid_argument);
}

}  // TEST_SUITE
