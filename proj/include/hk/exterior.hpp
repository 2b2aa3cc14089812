#pragma once

// Exterior algebra of the flat fiber R^4 with complex coefficients.
//
// A basis blade is a 4-bit mask over the coframe dxi^1..dxi^4: bit a (0-based)
// set means dxi^{a+1} is a factor, always taken in increasing index order.
// Orientation: dxi^1 ^ dxi^2 ^ dxi^3 ^ dxi^4 = vol (mask 0b1111).

#include <Eigen/Dense>

#include <array>
#include <bit>
#include <complex>
#include <cstdint>

namespace hk {

using cplx = std::complex<double>;

inline constexpr int kDim = 4;
inline constexpr int kBlades = 16;
inline constexpr std::uint8_t kVolMask = 0b1111;

using Vec4 = Eigen::Vector4d;
using CVec4 = Eigen::Matrix<cplx, 4, 1>;
using Mat4 = Eigen::Matrix4d;
using FiberVec = Eigen::Matrix<cplx, kBlades, 1>;
using FiberOp = Eigen::Matrix<cplx, kBlades, kBlades>;

class BasisBlade {
public:
    constexpr BasisBlade() = default;
    constexpr explicit BasisBlade(std::uint8_t mask) : mask_(mask & 0xF) {}

    /// Blade of a single coframe direction, `index` in 0..3.
    static constexpr BasisBlade direction(int index) { return BasisBlade(static_cast<std::uint8_t>(1u << index)); }

    constexpr std::uint8_t mask() const { return mask_; }
    constexpr int degree() const { return std::popcount(static_cast<unsigned>(mask_)); }
    constexpr bool operator==(const BasisBlade&) const = default;

private:
    std::uint8_t mask_ = 0;
};

/// Sign of A ^ B when both are written in increasing order, 0 when they share
/// a factor.
constexpr int wedge_sign(std::uint8_t a, std::uint8_t b) {
    if (a & b) return 0;
    int swaps = 0;
    for (int i = 0; i < kDim; ++i) {
        if (b & (1u << i)) {
            // factors of a with index greater than i must hop over dxi^{i+1}
            swaps += std::popcount(static_cast<unsigned>(a >> (i + 1)));
        }
    }
    return (swaps & 1) ? -1 : 1;
}

class Multivector {
public:
    Multivector() { coeffs_.setZero(); }
    explicit Multivector(const FiberVec& coeffs) : coeffs_(coeffs) {}

    static Multivector scalar(cplx value);
    static Multivector blade(BasisBlade b, cplx value = 1.0);
    static Multivector blade(std::uint8_t mask, cplx value = 1.0) { return blade(BasisBlade(mask), value); }
    /// Real or complex 1-form sum_a v_a dxi^{a+1}.
    static Multivector one_form(const CVec4& v);
    static Multivector volume() { return blade(kVolMask); }

    cplx& operator[](std::uint8_t mask) { return coeffs_[mask]; }
    cplx operator[](std::uint8_t mask) const { return coeffs_[mask]; }
    cplx coeff(BasisBlade b) const { return coeffs_[b.mask()]; }

    const FiberVec& coeffs() const { return coeffs_; }
    FiberVec& coeffs() { return coeffs_; }

    /// Homogeneous component of the given degree.
    Multivector grade(int degree) const;
    Multivector conj() const { return Multivector(coeffs_.conjugate()); }
    double norm() const { return coeffs_.norm(); }
    bool is_zero(double tol = 0.0) const { return coeffs_.cwiseAbs2().maxCoeff() <= tol * tol; }

    Multivector& operator+=(const Multivector& o) { coeffs_ += o.coeffs_; return *this; }
    Multivector& operator-=(const Multivector& o) { coeffs_ -= o.coeffs_; return *this; }
    Multivector& operator*=(cplx s) { coeffs_ *= s; return *this; }
    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator-(Multivector a) { a.coeffs_ = -a.coeffs_; return a; }
    friend Multivector operator*(cplx s, Multivector a) { return a *= s; }
    friend Multivector operator*(Multivector a, cplx s) { return a *= s; }

private:
    FiberVec coeffs_;
};

Multivector wedge(const Multivector& a, const Multivector& b);

/// Exterior multiplication v ^ a by a complex 1-form v.
Multivector exterior_mul(const CVec4& v, const Multivector& a);

/// Contraction iota(v) a, complex-bilinear in (v, a); graded derivation of
/// degree -1 with iota(e_a) dxi^b = delta_ab. The Hermitian adjoint of
/// exterior_mul(v, .) is interior(conj(v), .).
Multivector interior(const CVec4& v, const Multivector& a);

Multivector hodge_star(const Multivector& a);

/// Hermitian pairing, antilinear in the first slot; blades are orthonormal.
cplx inner(const Multivector& a, const Multivector& b);

/// Grading operator N: multiplies the degree-p part by p.
Multivector grading(const Multivector& a);

// Fiber operators as 16x16 matrices in the blade basis.
FiberOp exterior_mul_op(const CVec4& v);
FiberOp interior_op(const CVec4& v);
FiberOp hodge_star_op();
FiberOp grading_op();
FiberOp degree_projector(int degree);

inline Multivector apply_fiber(const FiberOp& op, const Multivector& a) { return Multivector(op * a.coeffs()); }

}  // namespace hk
