#pragma once

// Hyperkähler structure on the flat fiber R^4 = H.
//
// Coordinates (xi^1, xi^2, xi^3, xi^4) are identified with x0 + x1 i + x2 j + x3 k
// and the structures I, J, K act on cotangent coefficient vectors by left
// quaternion multiplication. The Kähler forms satisfy omega_C(e_a, e_b) = C_ab,
// which is the sign for which d_C^* = [Lambda_C, d] holds.

#include "hk/exterior.hpp"

#include <array>
#include <string>

namespace hk {

using Vec3 = Eigen::Vector3d;

struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    Quaternion conj() const { return {w, -x, -y, -z}; }
    double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const;
    Vec4 as_vector() const { return {w, x, y, z}; }
    bool operator==(const Quaternion&) const = default;
};

Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion operator+(const Quaternion& a, const Quaternion& b);
Quaternion operator*(double s, const Quaternion& a);

/// exp(phi1 i + phi2 j + phi3 k), always a unit quaternion.
Quaternion exp_imaginary(const Vec3& phi);
/// Inverse of exp_imaginary on unit quaternions, angle in [0, pi].
Vec3 log_unit(const Quaternion& u);

/// Matrix of v -> q v on coefficient vectors.
Mat4 left_mult(const Quaternion& q);

/// A compatible complex structure C = s1 I + s2 J + s3 K with |s| = 1.
class Structure {
public:
    static Structure I() { return Structure(Quaternion::i()); }
    static Structure J() { return Structure(Quaternion::j()); }
    static Structure K() { return Structure(Quaternion::k()); }
    /// Throws std::invalid_argument unless |sigma| = 1 to 1e-12.
    static Structure from_sigma(const Vec3& sigma);

    const Quaternion& quaternion() const { return q_; }
    Vec3 sigma() const { return {q_.x, q_.y, q_.z}; }
    Mat4 matrix() const { return left_mult(q_); }
    std::string name() const;

private:
    explicit Structure(Quaternion q) : q_(q) {}
    Quaternion q_;
};

inline const std::array<Structure, 3>& generators() {
    static const std::array<Structure, 3> g{Structure::I(), Structure::J(), Structure::K()};
    return g;
}

/// The concrete triple with its Kähler forms.
struct ComplexStructureTriple {
    Mat4 I;
    Mat4 J;
    Mat4 K;
    Multivector omega_I;
    Multivector omega_J;
    Multivector omega_K;

    static const ComplexStructureTriple& standard();
};

// Extensions of a fiber endomorphism A of R^4 to the 16-dimensional fiber.
FiberOp derivation_extension(const Mat4& A);      // sum_i a1 ^ .. A(ai) .. ^ ak
FiberOp multiplicative_extension(const Mat4& A);  // A(a1) ^ .. ^ A(ak)

FiberOp ad_op(const Structure& c);
/// x^ = x0 N + x1 ad_I + x2 ad_J + x3 ad_K.
FiberOp hat_op(const Quaternion& x);
/// Multiplicative action of the structure viewed as a group element.
FiberOp group_op(const Structure& c);
/// Action of a unit quaternion U = exp(phi . (I,J,K)), computed as the matrix
/// exponential of phi1 ad_I + phi2 ad_J + phi3 ad_K.
FiberOp group_op(const Quaternion& unit);

Multivector ad_action(const Structure& c, const Multivector& a);
Multivector group_action(const Structure& c, const Multivector& a);
Multivector group_action(const Quaternion& unit, const Multivector& a);

Multivector kahler_form(const Structure& c);
FiberOp lefschetz_op(const Structure& c);
FiberOp lefschetz_dual_op(const Structure& c);
Multivector lefschetz(const Structure& c, const Multivector& a);
Multivector lefschetz_dual(const Structure& c, const Multivector& a);

/// max over C in {I,J,K} of |ad_C a|.
double invariance_defect(const Multivector& a);

/// Projector onto forms of type (p,q) for C, i.e. degree p+q and
/// ad_C = i(p-q). Throws std::invalid_argument unless p,q >= 0, p+q <= 4.
FiberOp type_projector_op(const Structure& c, int p, int q);
Multivector type_projector(const Structure& c, int p, int q, const Multivector& a);

/// Orthogonal projector onto the joint kernel of ad_I, ad_J, ad_K.
const FiberOp& invariant_projector();

}  // namespace hk
