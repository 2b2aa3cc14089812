#include "hk/clifford_spin.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hk {

namespace {

const cplx kI{0.0, 1.0};
const double kSqrt2 = std::numbers::sqrt2;

Parity parity_of(const SpinMat& m) {
    // even operators preserve the parity of the W-degree
    bool even = false, odd = false;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            if (std::abs(m(r, c)) <= 1e-14) continue;
            ((std::popcount(static_cast<unsigned>(r)) + std::popcount(static_cast<unsigned>(c))) % 2 ? odd : even) = true;
        }
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
}

SpinMat commutator(const SpinMat& a, const SpinMat& b) { return a * b - b * a; }

int spin_degree(int index) { return std::popcount(static_cast<unsigned>(index)); }

}  // namespace

CliffordOp CliffordOp::from_matrix(const SpinMat& m) { return {m, parity_of(m)}; }

CliffordOp operator*(const CliffordOp& a, const CliffordOp& b) { return CliffordOp::from_matrix(a.matrix * b.matrix); }
CliffordOp operator+(const CliffordOp& a, const CliffordOp& b) { return CliffordOp::from_matrix(a.matrix + b.matrix); }
CliffordOp operator*(cplx s, const CliffordOp& a) { return CliffordOp::from_matrix(s * a.matrix); }

const std::array<CVec4, 2>& holomorphic_frame() {
    static const std::array<CVec4, 2> frame = [] {
        std::array<CVec4, 2> w;
        w[0] << 1.0, -kI, 0.0, 0.0;
        w[1] << 0.0, 0.0, 1.0, -kI;
        for (auto& v : w) v /= kSqrt2;
        return w;
    }();
    return frame;
}

SpinMat spin_exterior(int j) {
    SpinMat m = SpinMat::Zero();
    for (int col = 0; col < 4; ++col) {
        if (col & (1 << j)) continue;
        const int sign = std::popcount(static_cast<unsigned>(col & ((1 << j) - 1))) % 2 ? -1 : 1;
        m(col | (1 << j), col) = static_cast<double>(sign);
    }
    return m;
}

SpinMat spin_interior(int j) { return spin_exterior(j).adjoint(); }

CliffordOp clifford_action(const CVec4& v) {
    SpinMat m = SpinMat::Zero();
    const auto& w = holomorphic_frame();
    for (int j = 0; j < 2; ++j) {
        const cplx z = w[j].dot(v);                          // W component
        const cplx y = (w[j].transpose() * v)(0, 0);        // Wbar component
        m += kSqrt2 * z * spin_exterior(j) - kSqrt2 * y * spin_interior(j);
    }
    return CliffordOp::from_matrix(m);
}

CliffordOp clifford_generator(int a) {
    if (a < 0 || a >= kDim) throw std::invalid_argument("generator index must lie in 0..3");
    CVec4 e = CVec4::Zero();
    e[a] = 1.0;
    return clifford_action(e);
}

CliffordOp quantize(const Multivector& form) {
    SpinMat out = SpinMat::Zero();
    for (int mask = 0; mask < kBlades; ++mask) {
        const cplx c = form[static_cast<std::uint8_t>(mask)];
        if (c == cplx{}) continue;
        SpinMat prod = SpinMat::Identity();
        for (int a = 0; a < kDim; ++a)
            if (mask & (1 << a)) prod = prod * clifford_generator(a).matrix;
        out += c * prod;
    }
    return CliffordOp::from_matrix(out);
}

Multivector spin_kahler_form(const Structure& c) { return -kahler_form(c); }

CliffordOp chirality() { return cplx(-1.0) * quantize(Multivector::volume()); }

std::array<Multivector, 4> spin_basis_forms() {
    const auto& w = holomorphic_frame();
    const Multivector w1 = Multivector::one_form(w[0]);
    const Multivector w2 = Multivector::one_form(w[1]);
    return {Multivector::scalar(1.0), w1, w2, wedge(w1, w2)};
}

Sl2Triple Sl2Triple::standard() {
    const SpinMat cI = quantize(spin_kahler_form(Structure::I())).matrix;
    const SpinMat cJ = quantize(spin_kahler_form(Structure::J())).matrix;
    const SpinMat cK = quantize(spin_kahler_form(Structure::K())).matrix;
    return {CliffordOp::from_matrix(cI / (2.0 * kI)), CliffordOp::from_matrix(0.25 * (cJ - kI * cK)),
            CliffordOp::from_matrix(-0.25 * (cJ + kI * cK))};
}

Sl2Table sl2_table(double tol) {
    const Sl2Triple t = Sl2Triple::standard();
    Eigen::Matrix<cplx, 16, 3> basis;
    basis.col(0) = t.h.matrix.reshaped();
    basis.col(1) = t.e.matrix.reshaped();
    basis.col(2) = t.f.matrix.reshaped();
    const std::array<SpinMat, 3> brackets{commutator(t.h.matrix, t.e.matrix), commutator(t.h.matrix, t.f.matrix),
                                          commutator(t.e.matrix, t.f.matrix)};
    Sl2Table table;
    const auto solver = basis.colPivHouseholderQr();
    for (int i = 0; i < 3; ++i) {
        const Eigen::Matrix<cplx, 16, 1> target = brackets[i].reshaped();
        table.coefficients[i] = solver.solve(target);
        table.residuals[i] = (basis * table.coefficients[i] - target).norm();
        if (table.residuals[i] > tol)
            throw Sl2NotClosed(table.names[i] + " leaves span{h,e,f}: residual " + std::to_string(table.residuals[i]));
    }
    return table;
}

double clifford_relation_defect() {
    double worst = 0.0;
    for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) {
            const SpinMat ca = clifford_generator(a).matrix, cb = clifford_generator(b).matrix;
            const SpinMat anti = ca * cb + cb * ca + (a == b ? 2.0 : 0.0) * SpinMat::Identity();
            worst = std::max(worst, anti.norm());
        }
    return worst;
}

ChiralityReport chirality_report() {
    const SpinMat g = chirality().matrix;
    ChiralityReport r;
    r.square_defect = (g * g - SpinMat::Identity()).norm();
    for (int a = 0; a < kDim; ++a) {
        const SpinMat c = clifford_generator(a).matrix;
        r.anticommutation_defect = std::max(r.anticommutation_defect, (c * g + g * c).norm());
    }
    r.supertrace = g.trace();
    SpinMat grading = SpinMat::Zero();
    for (int i = 0; i < 4; ++i) grading(i, i) = spin_degree(i) % 2 ? -1.0 : 1.0;
    r.grading_defect = (g - grading).norm();
    return r;
}

double tau_map_defect(const CVec4& v) {
    double worst = 0.0;
    for (const auto& c : generators()) {
        const SpinMat a = 0.5 * quantize(spin_kahler_form(c)).matrix;
        const CVec4 cv = c.matrix().cast<cplx>() * v;
        worst = std::max(worst, (commutator(a, clifford_action(v).matrix) - clifford_action(cv).matrix).norm());
    }
    return worst;
}

double omega_grading_defect() {
    const SpinMat c = quantize(spin_kahler_form(Structure::I())).matrix;
    SpinMat expected = SpinMat::Zero();
    for (int i = 0; i < 4; ++i) expected(i, i) = kI * static_cast<double>(2 * spin_degree(i) - 2);
    return (c - expected).norm();
}

std::vector<std::pair<double, int>> grading_eigenvalues(double tol) {
    const SpinMat h = Sl2Triple::standard().h.matrix;
    const Eigen::ComplexEigenSolver<SpinMat> es(h);
    std::vector<double> ev;
    for (int i = 0; i < 4; ++i) ev.push_back(es.eigenvalues()[i].real());
    std::sort(ev.begin(), ev.end());
    std::vector<std::pair<double, int>> out;
    for (double e : ev) {
        if (!out.empty() && std::abs(e - out.back().first) <= tol)
            ++out.back().second;
        else
            out.emplace_back(e, 1);
    }
    return out;
}

double sp1_conjugation_defect(const Vec3& phi, const CVec4& v) {
    SpinMat gen = SpinMat::Zero();
    for (int i = 0; i < 3; ++i) gen += phi[i] * 0.5 * quantize(spin_kahler_form(generators()[i])).matrix;
    const SpinMat cx = gen.exp();
    const CVec4 xv = left_mult(exp_imaginary(phi)).cast<cplx>() * v;
    return (cx * clifford_action(v).matrix * cx.inverse() - clifford_action(xv).matrix).norm();
}

OmegaCheck omega_operator_check() {
    const auto forms = spin_basis_forms();
    const Multivector omega =
        0.25 * (spin_kahler_form(Structure::J()) - kI * spin_kahler_form(Structure::K()));
    OmegaCheck r;
    // matrix of eps(Omega) on the image of S, orthonormal basis
    SpinMat eps = SpinMat::Zero();
    for (int b = 0; b < 4; ++b) {
        const Multivector img = wedge(omega, forms[b]);
        Multivector proj;
        for (int a = 0; a < 4; ++a) {
            eps(a, b) = inner(forms[a], img);
            proj += eps(a, b) * forms[a];
        }
        r.subspace_defect = std::max(r.subspace_defect, (img - proj).norm());
    }
    const Sl2Triple t = Sl2Triple::standard();
    r.kappa = std::real(eps.conjugate().cwiseProduct(t.e.matrix).sum()) / eps.squaredNorm();
    r.e_defect = (t.e.matrix - r.kappa * eps).norm();
    r.f_defect = (t.f.matrix - r.kappa * SpinMat(eps.adjoint())).norm();
    r.omega_norm2 = omega.coeffs().squaredNorm();

    Eigen::Vector4cd vacuum = Eigen::Vector4cd::Zero();
    vacuum[0] = 1.0;
    Eigen::Vector4cd omega_in_s;
    for (int a = 0; a < 4; ++a) omega_in_s[a] = inner(forms[a], omega);
    r.f_on_omega = (t.f.matrix * omega_in_s)[0];
    r.f_vacuum = (t.f.matrix * vacuum).norm();
    r.e_vacuum_defect = (t.e.matrix * vacuum - r.kappa * omega_in_s).norm();
    return r;
}

DiracReport dirac_block_check(const Vec4& theta, int kmax) {
    if (kmax < 0) throw std::invalid_argument("truncation must be nonnegative");
    DiracReport r;
    r.theta = theta;
    r.kmax = kmax;
    r.min_even_to_odd_singular = std::numeric_limits<double>::infinity();
    const auto forms = spin_basis_forms();
    const SpinMat gamma = chirality().matrix;
    const double two_pi = 2.0 * std::numbers::pi;

    for (int k0 = -kmax; k0 <= kmax; ++k0)
        for (int k1 = -kmax; k1 <= kmax; ++k1)
            for (int k2 = -kmax; k2 <= kmax; ++k2)
                for (int k3 = -kmax; k3 <= kmax; ++k3) {
                    const Vec4 kt = Vec4(k0, k1, k2, k3) + theta;
                    const CVec4 dk = cplx(0.0, two_pi) * kt.cast<cplx>();
                    // d' = W-degree raising part of d on the image of S
                    SpinMat dprime = SpinMat::Zero();
                    for (int b = 0; b < 4; ++b) {
                        const Multivector img = exterior_mul(dk, forms[b]);
                        for (int a = 0; a < 4; ++a)
                            if (spin_degree(a) == spin_degree(b) + 1) dprime(a, b) = inner(forms[a], img);
                    }
                    const SpinMat dirac = kSqrt2 * (dprime + SpinMat(dprime.adjoint()));
                    const double lambda = two_pi * two_pi * kt.squaredNorm();
                    const double scale = std::max(1.0, lambda);

                    r.identification_defect = std::max(
                        r.identification_defect,
                        (dirac - cplx(0.0, two_pi) * clifford_action(kt.cast<cplx>()).matrix).norm() / std::sqrt(scale));
                    r.square_defect =
                        std::max(r.square_defect, (dirac * dirac - lambda * SpinMat::Identity()).norm() / scale);
                    r.parity_defect = std::max(r.parity_defect, (dirac * gamma + gamma * dirac).norm() / std::sqrt(scale));

                    const Eigen::SelfAdjointEigenSolver<SpinMat> es(dirac * dirac);
                    const SpinMat heat = es.eigenvectors() * (-es.eigenvalues().array()).exp().matrix().asDiagonal() *
                                         es.eigenvectors().adjoint();
                    r.supertrace_t1 += std::real((gamma * heat).trace());

                    if (lambda > 0.0) {
                        // even (Gamma = +1) -> odd block
                        Eigen::Matrix<cplx, 2, 2> block;
                        const std::array<int, 2> even{0, 3}, odd{1, 2};
                        for (int a = 0; a < 2; ++a)
                            for (int b = 0; b < 2; ++b) block(a, b) = dirac(odd[a], even[b]);
                        const Eigen::JacobiSVD<Eigen::Matrix<cplx, 2, 2>> svd(block);
                        const double smin = svd.singularValues().minCoeff() / std::sqrt(lambda);
                        r.min_even_to_odd_singular = std::min(r.min_even_to_odd_singular, smin);
                        // graded dimension of the lambda eigenspace
                        const double graded = std::real((gamma * es.eigenvectors()).cwiseProduct(es.eigenvectors().conjugate()).sum());
                        if (std::abs(graded) > 1e-8) r.even_odd_balanced = false;
                    }
                }
    return r;
}

}  // namespace hk
