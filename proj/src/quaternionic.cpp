#include "hk/quaternionic.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace hk {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion operator+(const Quaternion& a, const Quaternion& b) { return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z}; }

Quaternion operator*(double s, const Quaternion& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }

Quaternion exp_imaginary(const Vec3& phi) {
    const double angle = phi.norm();
    if (angle == 0.0) return Quaternion::one();
    const double s = std::sin(angle) / angle;
    return {std::cos(angle), s * phi[0], s * phi[1], s * phi[2]};
}

Vec3 log_unit(const Quaternion& u) {
    const Vec3 v{u.x, u.y, u.z};
    const double vn = v.norm();
    if (vn == 0.0) {
        if (u.w > 0.0) return Vec3::Zero();
        // -1: any axis works
        return {M_PI, 0.0, 0.0};
    }
    return v * (std::atan2(vn, u.w) / vn);
}

Mat4 left_mult(const Quaternion& q) {
    Mat4 m;
    const std::array<Quaternion, 4> basis{Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()};
    for (int c = 0; c < 4; ++c) m.col(c) = (q * basis[c]).as_vector();
    return m;
}

Structure Structure::from_sigma(const Vec3& sigma) {
    if (std::abs(sigma.norm() - 1.0) > 1e-12) throw std::invalid_argument("complex structure needs a unit sigma vector");
    return Structure(Quaternion{0.0, sigma[0], sigma[1], sigma[2]});
}

std::string Structure::name() const {
    if (q_ == Quaternion::i()) return "I";
    if (q_ == Quaternion::j()) return "J";
    if (q_ == Quaternion::k()) return "K";
    return "C(" + std::to_string(q_.x) + "," + std::to_string(q_.y) + "," + std::to_string(q_.z) + ")";
}

const ComplexStructureTriple& ComplexStructureTriple::standard() {
    static const ComplexStructureTriple triple = [] {
        ComplexStructureTriple t;
        t.I = Structure::I().matrix();
        t.J = Structure::J().matrix();
        t.K = Structure::K().matrix();
        t.omega_I = kahler_form(Structure::I());
        t.omega_J = kahler_form(Structure::J());
        t.omega_K = kahler_form(Structure::K());
        return t;
    }();
    return triple;
}

FiberOp derivation_extension(const Mat4& A) {
    FiberOp m = FiberOp::Zero();
    for (int col = 0; col < kBlades; ++col) {
        // replace each factor dxi^dir in turn by A(dxi^dir); the factor stays
        // in place, so write the blade as (left) ^ dxi^dir ^ (right)
        Multivector acc;
        for (int dir = 0; dir < kDim; ++dir) {
            if (!(col & (1 << dir))) continue;
            const auto left = static_cast<std::uint8_t>(col & ((1 << dir) - 1));
            const auto right = static_cast<std::uint8_t>(col & ~((1 << (dir + 1)) - 1));
            const CVec4 image = A.col(dir).cast<cplx>();
            acc += wedge(wedge(Multivector::blade(left), Multivector::one_form(image)), Multivector::blade(right));
        }
        m.col(col) = acc.coeffs();
    }
    return m;
}

FiberOp multiplicative_extension(const Mat4& A) {
    FiberOp m = FiberOp::Zero();
    for (int col = 0; col < kBlades; ++col) {
        Multivector acc = Multivector::scalar(1.0);
        for (int dir = 0; dir < kDim; ++dir) {
            if (!(col & (1 << dir))) continue;
            acc = wedge(acc, Multivector::one_form(A.col(dir).cast<cplx>()));
        }
        m.col(col) = acc.coeffs();
    }
    return m;
}

FiberOp ad_op(const Structure& c) { return derivation_extension(c.matrix()); }

FiberOp hat_op(const Quaternion& x) { return derivation_extension(left_mult(x)); }

FiberOp group_op(const Structure& c) { return multiplicative_extension(c.matrix()); }

FiberOp group_op(const Quaternion& unit) {
    if (std::abs(unit.norm() - 1.0) > 1e-12) throw std::invalid_argument("group action needs a unit quaternion");
    const Vec3 phi = log_unit(unit);
    const FiberOp gen = derivation_extension(left_mult(Quaternion{0.0, phi[0], phi[1], phi[2]}));
    return gen.exp();
}

Multivector ad_action(const Structure& c, const Multivector& a) { return apply_fiber(ad_op(c), a); }

Multivector group_action(const Structure& c, const Multivector& a) { return apply_fiber(group_op(c), a); }

Multivector group_action(const Quaternion& unit, const Multivector& a) { return apply_fiber(group_op(unit), a); }

Multivector kahler_form(const Structure& c) {
    const Mat4 m = c.matrix();
    Multivector w;
    for (int a = 0; a < kDim; ++a)
        for (int b = a + 1; b < kDim; ++b) w[static_cast<std::uint8_t>((1 << a) | (1 << b))] = m(a, b);
    return w;
}

FiberOp lefschetz_op(const Structure& c) {
    const Multivector w = kahler_form(c);
    FiberOp m;
    for (int col = 0; col < kBlades; ++col) m.col(col) = wedge(w, Multivector::blade(static_cast<std::uint8_t>(col))).coeffs();
    return m;
}

FiberOp lefschetz_dual_op(const Structure& c) { return lefschetz_op(c).adjoint(); }

Multivector lefschetz(const Structure& c, const Multivector& a) { return wedge(kahler_form(c), a); }

Multivector lefschetz_dual(const Structure& c, const Multivector& a) { return apply_fiber(lefschetz_dual_op(c), a); }

double invariance_defect(const Multivector& a) {
    double worst = 0.0;
    for (const auto& c : generators()) worst = std::max(worst, ad_action(c, a).norm());
    return worst;
}

FiberOp type_projector_op(const Structure& c, int p, int q) {
    if (p < 0 || q < 0 || p + q > kDim) throw std::invalid_argument("type (p,q) out of range");
    const int k = p + q;
    const int m = p - q;
    const FiberOp ad = ad_op(c);
    const cplx iu{0.0, 1.0};
    // Lagrange interpolation over the possible eigenvalues i*m', m' = -k, -k+2, .., k
    FiberOp proj = degree_projector(k);
    for (int other = -k; other <= k; other += 2) {
        if (other == m) continue;
        proj = ((ad - iu * static_cast<double>(other) * FiberOp::Identity()) / (iu * static_cast<double>(m - other))) * proj;
    }
    return proj;
}

Multivector type_projector(const Structure& c, int p, int q, const Multivector& a) {
    return apply_fiber(type_projector_op(c, p, q), a);
}

const FiberOp& invariant_projector() {
    static const FiberOp proj = [] {
        Eigen::Matrix<cplx, 3 * kBlades, kBlades> stacked;
        for (int i = 0; i < 3; ++i) stacked.block<kBlades, kBlades>(i * kBlades, 0) = ad_op(generators()[i]);
        Eigen::JacobiSVD<Eigen::Matrix<cplx, 3 * kBlades, kBlades>> svd(stacked, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        FiberOp p = FiberOp::Zero();
        for (int i = 0; i < kBlades; ++i) {
            if (sv[i] < 1e-10) {
                const auto v = svd.matrixV().col(i);
                p += v * v.adjoint();
            }
        }
        return p;
    }();
    return proj;
}

}  // namespace hk
