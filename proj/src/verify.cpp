#include "hk/verify.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace hk {

namespace {

class Suite {
public:
    Suite(std::string name, const RunConfig& cfg) : name_(std::move(name)), cfg_(cfg) {}

    void check(std::string check_name, double residual, double nominal, std::string detail = {}) {
        const double tol = cfg_.tolerance.value_or(nominal);
        const bool ok = std::isfinite(residual) && residual <= tol;
        out_.push_back({name_, std::move(check_name), residual, tol, ok, std::move(detail)});
    }

    /// Runs `f(sample)` for every sample and records the maximum.
    void sampled(std::string check_name, double nominal, const std::function<double(int)>& f) {
        double worst = 0.0;
        for (int s = 0; s < cfg_.samples; ++s) worst = std::max(worst, f(s));
        check(std::move(check_name), worst, nominal);
    }

    /// Records residual 0 if `f` throws an exception of type E, 1 otherwise.
    template <class E>
    void expect_throw(std::string check_name, const std::function<void()>& f) {
        double r = 1.0;
        std::string detail;
        try {
            f();
        } catch (const E& e) {
            r = 0.0;
            detail = e.what();
        }
        check(std::move(check_name), r, 0.5, std::move(detail));
    }

    std::uint64_t seed(int sample, int stream = 0) const { return cfg_.seed * 1000003ULL + 7919ULL * static_cast<std::uint64_t>(stream) + static_cast<std::uint64_t>(sample); }
    const RunConfig& cfg() const { return cfg_; }
    std::vector<CheckResult> take() { return std::move(out_); }

private:
    std::string name_;
    const RunConfig& cfg_;
    std::vector<CheckResult> out_;
};

Multivector random_multivector(std::uint64_t seed) { return random_field(0, seed)[0]; }

Quaternion random_quaternion(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    return {g(rng), g(rng), g(rng), g(rng)};
}

Quaternion random_unit(std::uint64_t seed) {
    const Quaternion q = random_quaternion(seed);
    return (1.0 / q.norm()) * q;
}

double rel(const Multivector& a, const Multivector& b) {
    const double s = std::max(a.norm(), b.norm());
    return s == 0.0 ? 0.0 : (a - b).norm() / s;
}

double op_scale(int kmax) { return 2.0 * std::numbers::pi * std::max(1, 2 * kmax); }

double dot(const Quaternion& x, const Quaternion& y) { return x.w * y.w + x.x * y.x + x.y * y.y + x.z * y.z; }

double realness_defect(const FormField& a) {
    const double m = a.max_abs();
    if (m == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.mode_count(); ++i)
        worst = std::max(worst, (a[i].coeffs() - a[a.mirror(i)].coeffs().conjugate()).cwiseAbs().maxCoeff());
    return worst / m;
}

void exterior_suite(Suite& s) {
    s.sampled("wedge associativity", 1e-13, [&](int i) {
        const Multivector a = random_multivector(s.seed(i, 1)), b = random_multivector(s.seed(i, 2)), c = random_multivector(s.seed(i, 3));
        return rel(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
    });
    s.sampled("graded commutativity", 1e-13, [&](int i) {
        double worst = 0.0;
        for (int p = 0; p <= 4; ++p)
            for (int q = 0; q <= 4; ++q) {
                const Multivector a = random_multivector(s.seed(i, 4)).grade(p), b = random_multivector(s.seed(i, 5)).grade(q);
                worst = std::max(worst, rel(wedge(a, b), ((p * q) % 2 ? -1.0 : 1.0) * wedge(b, a)));
            }
        return worst;
    });
    s.sampled("hodge star squares to (-1)^{p(4-p)}", 1e-13, [&](int i) {
        double worst = 0.0;
        for (int p = 0; p <= 4; ++p) {
            const Multivector a = random_multivector(s.seed(i, 6)).grade(p);
            worst = std::max(worst, rel(hodge_star(hodge_star(a)), ((p * (4 - p)) % 2 ? -1.0 : 1.0) * a));
        }
        return worst;
    });
    s.sampled("a ^ *b = <b, a> vol on real forms", 1e-13, [&](int i) {
        double worst = 0.0;
        for (int p = 0; p <= 4; ++p) {
            const Multivector a = Multivector(random_multivector(s.seed(i, 7)).coeffs().real().cast<cplx>()).grade(p);
            const Multivector b = Multivector(random_multivector(s.seed(i, 8)).coeffs().real().cast<cplx>()).grade(p);
            worst = std::max(worst, rel(wedge(a, hodge_star(b)), inner(b, a) * Multivector::volume()));
        }
        return worst;
    });
    s.sampled("interior is adjoint to exterior", 1e-13, [&](int i) {
        const CVec4 v = random_multivector(s.seed(i, 9)).coeffs().head<4>();
        const Multivector a = random_multivector(s.seed(i, 10)), b = random_multivector(s.seed(i, 11));
        const cplx l = inner(exterior_mul(v, a), b), r = inner(a, interior(v.conjugate(), b));
        return std::abs(l - r) / (1.0 + std::abs(l));
    });
    s.sampled("{iota(u), eps(v)} = u.v", 1e-13, [&](int i) {
        const CVec4 u = random_multivector(s.seed(i, 12)).coeffs().head<4>();
        const CVec4 v = random_multivector(s.seed(i, 13)).coeffs().head<4>();
        const Multivector a = random_multivector(s.seed(i, 14));
        return rel(interior(u, exterior_mul(v, a)) + exterior_mul(v, interior(u, a)), (u.transpose() * v)(0, 0) * a);
    });
}

void quaternionic_suite(Suite& s) {
    const Mat4 id = Mat4::Identity();
    const auto& t = ComplexStructureTriple::standard();
    s.check("I^2 = J^2 = K^2 = IJK = -1",
            std::max({(t.I * t.I + id).norm(), (t.J * t.J + id).norm(), (t.K * t.K + id).norm(), (t.I * t.J * t.K + id).norm()}), 1e-14);
    double sd = 0.0, sq = 0.0;
    for (const auto& c : generators()) {
        const Multivector w = kahler_form(c);
        sd = std::max(sd, rel(hodge_star(w), w));
        sq = std::max(sq, rel(wedge(w, w), 2.0 * Multivector::volume()));
    }
    s.check("Kähler forms are self-dual", sd, 1e-14);
    s.check("omega ^ omega = 2 vol", sq, 1e-14);
    double grp = 0.0;
    for (const auto& c : generators()) {
        const FiberOp e = (0.5 * std::numbers::pi * ad_op(c)).exp();
        grp = std::max(grp, (e - group_op(c)).norm());
    }
    s.check("exp(pi/2 ad_C) = C on forms", grp, 1e-12);
    s.sampled("ad_C is a derivation", 1e-13, [&](int i) {
        const Multivector a = random_multivector(s.seed(i, 1)), b = random_multivector(s.seed(i, 2));
        double worst = 0.0;
        for (const auto& c : generators())
            worst = std::max(worst, rel(ad_action(c, wedge(a, b)), wedge(ad_action(c, a), b) + wedge(a, ad_action(c, b))));
        return worst;
    });
    double split = 0.0;
    for (const auto& c : generators()) {
        FiberOp sum = FiberOp::Zero();
        for (int p = 0; p <= 4; ++p)
            for (int q = 0; p + q <= 4; ++q) sum += type_projector_op(c, p, q);
        split = std::max(split, (sum - FiberOp::Identity()).norm());
    }
    s.check("type projectors sum to the identity", split, 1e-12);
    const FiberOp& inv = invariant_projector();
    s.check("invariant projector is idempotent", (inv * inv - inv).norm(), 1e-12,
            "rank " + std::to_string(static_cast<int>(std::lround(inv.trace().real()))));
    s.check("invariant forms have rank 5", std::abs(inv.trace().real() - 5.0), 1e-10);
    s.sampled("invariant projection is annihilated by ad_C", 1e-12,
              [&](int i) { return invariance_defect(apply_fiber(inv, random_multivector(s.seed(i, 3)))); });
}

void operators_suite(Suite& s) {
    const int k = s.cfg().kmax;
    const double sc = op_scale(k);
    auto field = [&](int i, int stream = 0) { return random_field(k, s.seed(i, stream)); };

    s.sampled("d d = 0", 1e-12, [&](int i) {
        const FormField a = field(i);
        return exterior_d(exterior_d(a)).norm() / (sc * sc * a.norm());
    });
    s.sampled("d_C: C d C^-1 = [ad_C, d]", 1e-11, [&](int i) {
        const FormField a = field(i);
        double worst = 0.0;
        for (const auto& c : generators()) worst = std::max(worst, relative_residual(twisted_d(c, a), twisted_d_commutator(c, a)));
        return worst;
    });
    s.sampled("{d, d_C} = 0 and d_C d_C = 0", 1e-11, [&](int i) {
        const FormField a = field(i);
        double worst = 0.0;
        for (const auto& c : generators()) {
            worst = std::max(worst, cancellation_residual(exterior_d(twisted_d(c, a)), twisted_d(c, exterior_d(a))));
            worst = std::max(worst, twisted_d(c, twisted_d(c, a)).norm() / (sc * sc * a.norm()));
        }
        return worst;
    });
    s.sampled("adjointness of d, d_C, d_x", 1e-11, [&](int i) {
        const FormField a = field(i, 1), b = field(i, 2);
        std::vector<OperatorLabel> labels{OperatorLabel::d()};
        for (const auto& c : generators()) labels.push_back(OperatorLabel::d_c(c));
        labels.push_back(OperatorLabel::d_x(random_quaternion(s.seed(i, 3))));
        double worst = 0.0;
        for (const auto& l : labels) {
            const FormField da = apply(l, a);
            const cplx lhs = inner(da, b), rhs = inner(a, adjoint_d(l, b));
            worst = std::max(worst, std::abs(lhs - rhs) / (da.norm() * b.norm()));
        }
        return worst;
    });
    s.sampled("[x^, d_y] = d_xy", 1e-10, [&](int i) {
        const FormField a = field(i);
        const Quaternion x = random_quaternion(s.seed(i, 4)), y = random_quaternion(s.seed(i, 5));
        return relative_residual(hat(x, quaternionic_d(y, a)) - quaternionic_d(y, hat(x, a)), quaternionic_d(x * y, a));
    });
    s.sampled("d_x d_y + d_y d_x = 0", 1e-10, [&](int i) {
        const FormField a = field(i);
        const Quaternion x = random_quaternion(s.seed(i, 4)), y = random_quaternion(s.seed(i, 5));
        return cancellation_residual(quaternionic_d(x, quaternionic_d(y, a)), quaternionic_d(y, quaternionic_d(x, a)));
    });
    s.sampled("d_x d_y^* + d_y^* d_x = Re(conj(x) y) Delta", 1e-10, [&](int i) {
        const FormField a = field(i);
        const Quaternion x = random_quaternion(s.seed(i, 4)), y = random_quaternion(s.seed(i, 5));
        const OperatorLabel ly = OperatorLabel::d_x(y);
        const FormField lhs = quaternionic_d(x, adjoint_d(ly, a)) + adjoint_d(ly, quaternionic_d(x, a));
        return relative_residual(lhs, dot(x, y) * laplacian(a));
    });
    s.sampled("d_x = x0 d + x1 d_I + x2 d_J + x3 d_K", 1e-12, [&](int i) {
        const FormField a = field(i);
        const Quaternion x = random_quaternion(s.seed(i, 4));
        const FormField sum = x.w * exterior_d(a) + x.x * twisted_d(Structure::I(), a) + x.y * twisted_d(Structure::J(), a) +
                              x.z * twisted_d(Structure::K(), a);
        return relative_residual(quaternionic_d(x, a), sum);
    });
    s.sampled("U d_x U^-1 = d_Ux", 1e-10, [&](int i) {
        return conjugation_law(random_unit(s.seed(i, 6)), random_quaternion(s.seed(i, 7)), field(i));
    });
    s.sampled("[N, d] = d", 1e-12, [&](int i) {
        const FormField a = field(i);
        return relative_residual(grading(exterior_d(a)) - exterior_d(grading(a)), exterior_d(a));
    });
    s.sampled("Delta = d d^* + d^* d = d_C d_C^* + d_C^* d_C", 1e-10, [&](int i) {
        const FormField a = field(i);
        double worst = relative_residual(laplacian_of(OperatorLabel::d(), a), laplacian(a));
        for (const auto& c : generators()) worst = std::max(worst, relative_residual(laplacian_of(OperatorLabel::d_c(c), a), laplacian(a)));
        return worst;
    });
    s.sampled("H + Delta G = 1", 1e-12, [&](int i) {
        const FormField a = field(i);
        return relative_residual(harmonic_project(a) + laplacian(green(a)), a);
    });
    s.sampled("realness preserved by d, d_C, Delta, G, H", 1e-12, [&](int i) {
        const FormField a = random_field(k, s.seed(i, 8), true);
        double worst = 0.0;
        for (const FormField& b : {exterior_d(a), twisted_d(Structure::I(), a), twisted_d(Structure::J(), a),
                                   twisted_d(Structure::K(), a), laplacian(a), green(a), harmonic_project(a)})
            worst = std::max(worst, realness_defect(b));
        return worst;
    });
}

void kodaira_suite_checks(Suite& s) {
    std::vector<double> worst;
    std::vector<std::string> names;
    for (int i = 0; i < s.cfg().samples; ++i) {
        const auto res = kodaira_suite(random_field(s.cfg().kmax, s.seed(i)));
        if (worst.empty()) {
            worst.assign(res.size(), 0.0);
            for (const auto& r : res) names.push_back(r.name);
        }
        for (std::size_t j = 0; j < res.size(); ++j) worst[j] = std::max(worst[j], res[j].residual);
    }
    for (std::size_t j = 0; j < worst.size(); ++j) s.check(names[j], worst[j], 1e-10);
}

void transgression_suite(Suite& s) {
    const int k = s.cfg().kmax;
    s.sampled("order 1 round trip", 1e-9, [&](int i) { return transgress1(exterior_d(random_field(k, s.seed(i, 1)))).residual; });
    s.sampled("order 2 round trip", 1e-9, [&](int i) {
        double worst = 0.0;
        for (const auto& c : generators())
            worst = std::max(worst, transgress2(c, exterior_d(twisted_d(c, random_field(k, s.seed(i, 2))))).residual);
        return worst;
    });
    s.sampled("order 4 round trip", 1e-8, [&](int i) { return transgress4(hyper_d(random_field(k, s.seed(i, 3)))).residual; });
    s.sampled("order 4 rejects exact, not d_C-closed forms", 0.5, [&](int i) {
        try {
            transgress4(exterior_d(random_field(k, s.seed(i, 4))));
        } catch (const PreconditionError& e) {
            return e.kind() == PreconditionKind::NotDCClosed ? 0.0 : 1.0;
        }
        return 1.0;
    });
    s.expect_throw<PreconditionError>("harmonic volume form is not exact", [&] {
        transgress4(FormField::constant(k, Multivector::volume()));
    });
    s.expect_throw<PreconditionError>("order 4 rejects degree < 4", [&] {
        transgress4(exterior_d(random_field_of_degree(k, 0, s.seed(0, 5))));
    });
    const LaplConstant lc = measure_lapl_constant(default_lapl_modes(20));
    s.check("lapl constant spread over 20 modes", lc.spread, 1e-10, "measured " + std::to_string(lc.value));
    s.check("lapl constant matches the single-mode symbolic value 1", std::abs(lc.value - 1.0), 1e-10,
            "reference values 16 and 1");
}

void zeta_suite(Suite& s) {
    for (double h : {0.5, 2.0, 10.0}) {
        RegularizedIntegrand g{[h](double t) { return std::exp(-t * h); }, {{0, 1.0}}, {}};
        s.check("regularized e^{-th} = -log h, h = " + std::to_string(h).substr(0, 4),
                std::abs(regularized_integral(g).value + std::log(h)), 1e-10);
    }
    {
        // t d/dt (t d/dt + 1) e^{-3t} = (9t^2 - 6t) e^{-3t}
        RegularizedIntegrand g{[](double t) { return (9 * t * t - 6 * t) * std::exp(-3 * t); }, {}, {}};
        s.check("t d_t (t d_t + 1) F integrates to -F(0)", std::abs(regularized_integral(g).value + 1.0), 1e-9);
        RegularizedIntegrand f{[](double t) { return -t * std::exp(-t); }, {}, {}};
        s.check("t d_t F integrates to -F(0)", std::abs(regularized_integral(f).value + 1.0), 1e-9);
        RegularizedIntegrand conv{[](double t) { return std::exp(-t) - std::exp(-2 * t); }, {}, {}};
        s.check("convergent integral e^{-t} - e^{-2t} = log 2", std::abs(regularized_integral(conv).value - std::log(2.0)), 1e-10);
    }
    const SpectrumModel m0 = SpectrumModel::make(Vec4::Zero());
    const ZetaResult mellin = log_det_prime_mellin(m0), closed = log_det_prime_closed_form(m0);
    s.check("log det' Delta_0: Mellin split vs closed form", std::abs(mellin.log_det_prime - closed.log_det_prime), 1e-8);
    double split = 0.0;
    for (double t0 : {0.5, 2.0}) split = std::max(split, std::abs(log_det_prime_mellin(m0, t0).log_det_prime - mellin.log_det_prime));
    s.check("Mellin split point independence", split, 1e-9);
    {
        const SpectrumModel m2 = SpectrumModel::make(Vec4::Zero(), 1, 2.0);
        s.check("rescaling shifts log det' by zeta(0) log c",
                std::abs(log_det_prime_mellin(m2).log_det_prime - (mellin.log_det_prime - std::log(2.0))), 1e-8);
    }
    {
        // Poisson summation for the full lattice sum at t = 0.1
        const double t = 0.1;
        double dual = 0.0;
        for (int n0 = -6; n0 <= 6; ++n0)
            for (int n1 = -6; n1 <= 6; ++n1)
                for (int n2 = -6; n2 <= 6; ++n2)
                    for (int n3 = -6; n3 <= 6; ++n3)
                        dual += std::exp(-(n0 * n0 + n1 * n1 + n2 * n2 + n3 * n3) / (4 * t));
        dual /= std::pow(4 * std::numbers::pi * t, 2);
        s.check("heat trace vs Poisson dual at t = 0.1", std::abs(heat_trace(m0, t) + 1.0 - dual) / dual, 1e-12);
        s.check("heat trace vs direct lattice sum at t = 1",
                std::abs(heat_trace(m0, 1.0) - heat_trace_direct(m0, 1.0, 3.0)), 1e-14);
    }
    std::vector<Vec4> thetas{Vec4::Zero(), Vec4(0.5, 0.0, 0.0, 0.0)};
    if (!s.cfg().theta.isZero(0.0) && s.cfg().theta != thetas[1]) thetas.push_back(s.cfg().theta);
    for (const Vec4& th : thetas) {
        const TorsionReport r = torsion_report(th);
        const std::string tag = " at theta = (" + std::to_string(th[0]).substr(0, 4) + "," + std::to_string(th[1]).substr(0, 4) + "," +
                                std::to_string(th[2]).substr(0, 4) + "," + std::to_string(th[3]).substr(0, 4) + ")";
        s.check("T = 1" + tag, r.residual_T, 1e-8);
        s.check("T_h = (det' Delta_0)^2" + tag, r.residual_T_h, 1e-8);
        s.check("beta0 = 3 log T_h" + tag, r.residual_beta0, 1e-6);
    }
    double str = 0.0;
    for (double t : {0.1, 1.0, 10.0}) str = std::max(str, std::abs(supertrace_heat(Vec4::Zero(), t)));
    s.check("sum_q (-1)^q Tr e^{-t Delta_q} = 0", str, 1e-14);
}

void clifford_suite(Suite& s) {
    s.check("Clifford relation", clifford_relation_defect(), 1e-14);
    const ChiralityReport ch = chirality_report();
    s.check("Gamma^2 = 1", ch.square_defect, 1e-10);
    s.check("c(v) Gamma = -Gamma c(v)", ch.anticommutation_defect, 1e-10);
    s.check("Gamma = (-1)^q on Lambda^q W", ch.grading_defect, 1e-10);
    s.sampled("[c(omega'_C)/2, c(v)] = c(C v)", 1e-10, [&](int i) {
        return tau_map_defect(random_multivector(s.seed(i, 1)).coeffs().head<4>());
    });
    s.check("c(omega'_I) = i(2q - 2) on Lambda^q W", omega_grading_defect(), 1e-10);
    const auto ev = grading_eigenvalues();
    double ev_defect = ev.size() == 3 ? 0.0 : 1.0;
    if (ev.size() == 3)
        for (int q = 0; q < 3; ++q)
            ev_defect = std::max({ev_defect, std::abs(ev[q].first - (q - 1)), std::abs(ev[q].second - (q == 1 ? 2.0 : 1.0))});
    s.check("h eigenvalues q - 1 with multiplicities 1, 2, 1", ev_defect, 1e-10);
    s.sampled("c(x) c(v) c(x)^-1 = c(x(v))", 1e-10, [&](int i) {
        const Multivector r = random_multivector(s.seed(i, 2));
        return sp1_conjugation_defect(Vec3(r[1].real(), r[2].real(), r[4].real()), r.coeffs().tail<4>());
    });
    const Sl2Table t = sl2_table(1.0);
    s.check("sl2 table closes", std::max({t.residuals[0], t.residuals[1], t.residuals[2]}), 1e-10);
    s.check("[e,f] = h", (t.coefficients[2] - Eigen::Vector3cd(1.0, 0.0, 0.0)).norm(), 1e-10);
    s.check("[h,e] = 2e", (t.coefficients[0] - Eigen::Vector3cd(0.0, 2.0, 0.0)).norm(), 1e-10);
    s.check("[h,f] = -2f", (t.coefficients[1] - Eigen::Vector3cd(0.0, 0.0, -2.0)).norm(), 1e-10);
    const OmegaCheck om = omega_operator_check();
    s.check("e = 2 eps(Omega)", std::max(om.e_defect, std::abs(om.kappa - 2.0)), 1e-10, "kappa " + std::to_string(om.kappa));
    s.check("f = 2 iota(Omega)", om.f_defect, 1e-10);
    s.check("f Omega = 2 |Omega|^2 |1>", std::abs(om.f_on_omega - 2.0 * om.omega_norm2), 1e-10);
    s.check("f |1> = 0", om.f_vacuum, 1e-10);
    for (const Vec4& th : {Vec4(Vec4::Zero()), Vec4(0.5, 0.0, 0.0, 0.0)}) {
        const DiracReport d = dirac_block_check(th, 3);
        const std::string tag = th.isZero(0.0) ? " (untwisted)" : " (half twist)";
        s.check("D = 2 pi i c(k + theta)" + tag, d.identification_defect, 1e-10);
        s.check("D^2 = 4 pi^2 |k + theta|^2" + tag, d.square_defect, 1e-10);
        s.check("D odd and S+ = S- for lambda != 0" + tag,
                std::max(d.parity_defect, d.even_odd_balanced && d.min_even_to_odd_singular > 0.5 ? 0.0 : 1.0), 1e-10);
        s.check("Str e^{-D^2} = 0" + tag, std::abs(d.supertrace_t1), 1e-12);
    }
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& config) {
    Suite s(name, config);
    if (name == "exterior") exterior_suite(s);
    else if (name == "quaternionic") quaternionic_suite(s);
    else if (name == "operators") operators_suite(s);
    else if (name == "kodaira") kodaira_suite_checks(s);
    else if (name == "transgression") transgression_suite(s);
    else if (name == "zeta") zeta_suite(s);
    else if (name == "clifford") clifford_suite(s);
    else throw std::invalid_argument("unknown suite '" + name + "'");
    return s.take();
}

std::vector<CheckResult> run_verify(const RunConfig& config) {
    std::vector<CheckResult> all;
    for (const auto& name : known_suites()) {
        if (!config.suites.empty() && std::find(config.suites.begin(), config.suites.end(), name) == config.suites.end()) continue;
        auto part = run_suite(name, config);
        all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return all;
}

}  // namespace hk
