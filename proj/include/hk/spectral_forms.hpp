#pragma once

// Differential forms on the flat torus T^4 = R^4 / Z^4 as truncated Fourier
// series  omega(xi) = sum_k omega_k exp(2 pi i k . xi),  |k|_inf <= kmax.
//
// Every operator below is mode-diagonal, so the truncation is closed under the
// whole algebra and all identities hold to rounding.

#include "hk/exterior.hpp"
#include "hk/quaternionic.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hk {

namespace detail {

// Recycles field-sized blocks per thread; fields of one truncation are
// created and dropped at a high rate and would otherwise round-trip through
// mmap on every operator application.
void* acquire_block(std::size_t bytes);
void release_block(void* p, std::size_t bytes) noexcept;

template <class T>
struct BlockAllocator {
    using value_type = T;
    BlockAllocator() = default;
    template <class U>
    BlockAllocator(const BlockAllocator<U>&) {}
    T* allocate(std::size_t n) { return static_cast<T*>(acquire_block(n * sizeof(T))); }
    void deallocate(T* p, std::size_t n) noexcept { release_block(p, n * sizeof(T)); }
    template <class U>
    bool operator==(const BlockAllocator<U>&) const { return true; }
};

}  // namespace detail

using ModeIndex = std::array<int, 4>;

class FormField {
public:
    /// Zero field; throws std::invalid_argument if kmax < 0.
    explicit FormField(int kmax);

    static FormField single_mode(int kmax, const ModeIndex& k, const Multivector& value);
    static FormField constant(int kmax, const Multivector& value) { return single_mode(kmax, {0, 0, 0, 0}, value); }

    int kmax() const { return kmax_; }
    int side() const { return 2 * kmax_ + 1; }
    std::size_t mode_count() const { return modes_.size(); }

    bool contains(const ModeIndex& k) const;
    /// Throws std::out_of_range if k is outside the truncation.
    std::size_t index_of(const ModeIndex& k) const;
    ModeIndex mode_at(std::size_t index) const;

    Multivector& operator[](std::size_t index) { return modes_[index]; }
    const Multivector& operator[](std::size_t index) const { return modes_[index]; }
    Multivector& at(const ModeIndex& k) { return modes_[index_of(k)]; }
    const Multivector& at(const ModeIndex& k) const { return modes_[index_of(k)]; }

    /// Index of the mode -k for the mode stored at `index`.
    std::size_t mirror(std::size_t index) const { return modes_.size() - 1 - index; }

    double norm() const;
    double max_abs() const;
    bool is_real(double tol = 0.0) const;
    /// Degree-p component of every mode.
    FormField grade(int degree) const;
    /// Highest degree carrying a coefficient above `tol`, or -1 for the zero field.
    int top_degree(double tol = 0.0) const;

    FormField& operator+=(const FormField& o);
    FormField& operator-=(const FormField& o);
    FormField& operator*=(cplx s);
    friend FormField operator+(FormField a, const FormField& b) { return a += b; }
    friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
    friend FormField operator*(cplx s, FormField a) { return a *= s; }

private:
    int kmax_;
    std::vector<Multivector, detail::BlockAllocator<Multivector>> modes_;
};

/// L^2 pairing with <e_k blade, e_k blade> = 1, antilinear in the first slot.
cplx inner(const FormField& a, const FormField& b);

/// Calls f(index, k) for every mode in storage order, with k as a real vector.
template <class F>
void for_each_mode(int kmax, F&& f) {
    std::size_t idx = 0;
    for (int k0 = -kmax; k0 <= kmax; ++k0)
        for (int k1 = -kmax; k1 <= kmax; ++k1)
            for (int k2 = -kmax; k2 <= kmax; ++k2)
                for (int k3 = -kmax; k3 <= kmax; ++k3) f(idx++, Vec4(k0, k1, k2, k3));
}

// ---------------------------------------------------------------------------
// Operators

enum class OpKind { D, DAdjoint, Grading, Hat, Laplacian, Green, Harmonic, Lefschetz, LefschetzDual };

/// Names one operator of the algebra. d, d_C and d_x are all OpKind::D with
/// the quaternion x: d is x = 1, d_C is x = C.
struct OperatorLabel {
    OpKind kind = OpKind::D;
    Quaternion x = Quaternion::one();
    Vec3 sigma = Vec3(1.0, 0.0, 0.0);  // structure for L_C / Lambda_C

    static OperatorLabel d() { return {}; }
    static OperatorLabel d_c(const Structure& c) { return {OpKind::D, c.quaternion(), c.sigma()}; }
    static OperatorLabel d_x(const Quaternion& x) { return {OpKind::D, x, Vec3(1.0, 0.0, 0.0)}; }
    OperatorLabel adjoint() const;
    std::string name() const;
};

FormField apply(const OperatorLabel& op, const FormField& a);
FormField apply_fiber(const FiberOp& op, const FormField& a);

FormField exterior_d(const FormField& a);

/// d_C = C d C^{-1}, realized through the multiplicative group action.
FormField twisted_d(const Structure& c, const FormField& a);
/// d_C = [ad_C, d], the derivation realization.
FormField twisted_d_commutator(const Structure& c, const FormField& a);

/// d_x = x0 d + x1 d_I + x2 d_J + x3 d_K. On the mode k this is
/// 2 pi i (x k)^ , the linear combination taken inside the 1-form factor.
FormField quaternionic_d(const Quaternion& x, const FormField& a);

/// L^2 adjoint of d, d_C or d_x; throws std::invalid_argument for any other
/// label.
FormField adjoint_d(const OperatorLabel& label, const FormField& a);

/// Multiplies the mode k by 4 pi^2 |k|^2.
FormField laplacian(const FormField& a);
/// D D^* + D^* D for the given differential D (d, d_C or d_x).
FormField laplacian_of(const OperatorLabel& label, const FormField& a);
FormField green(const FormField& a);
FormField harmonic_project(const FormField& a);

FormField grading(const FormField& a);
FormField hat(const Quaternion& x, const FormField& a);
FormField group_action(const Structure& c, const FormField& a);
FormField group_action(const Quaternion& unit, const FormField& a);
FormField group_action_inverse(const Structure& c, const FormField& a);

/// max over C in {I,J,K} of |ad_C a|_{L^2}.
double invariance_defect(const FormField& a);

// ---------------------------------------------------------------------------
// Residual bookkeeping

/// |lhs - rhs| / max(|lhs|, |rhs|), zero when both vanish.
double relative_residual(const FormField& lhs, const FormField& rhs);
/// |a + b| / (|a| + |b|), zero when both vanish; used for identities of the
/// form a + b = 0.
double cancellation_residual(const FormField& a, const FormField& b);

struct NamedResidual {
    std::string name;
    double residual = 0.0;
};

/// Residuals of the generalized Kodaira identities, maximized over the
/// structures where they are stated for every C:
///   d^* = -[Lambda_C, d_C],  d_C^* = [Lambda_C, d],
///   d = [L_C, d_C^*],        d_C = -[L_C, d^*],
///   d_K^* = [Lambda_I, d_J], d_J^* = [d_K, Lambda_I],
/// followed by the conjugation relations d_J = J d J^{-1}, d_K = -J d_I J^{-1},
/// J Lambda_I J^{-1} = -Lambda_I and J L_I J^{-1} = -L_I.
std::vector<NamedResidual> kodaira_suite(const FormField& a);

/// |U d_x U^{-1} a - d_{Ux} a| relative to |d_{Ux} a|.
double conjugation_law(const Quaternion& unit, const Quaternion& x, const FormField& a);

// ---------------------------------------------------------------------------
// Sampling

/// Independent standard complex Gaussian coefficients per (mode, blade);
/// conjugate-symmetrized when `real` is set. Deterministic for a given seed.
FormField random_field(int kmax, std::uint64_t seed, bool real = false);

/// Random field of a single degree.
FormField random_field_of_degree(int kmax, int degree, std::uint64_t seed, bool real = false);

/// Random field projected fiberwise onto the Sp(1)-invariant forms.
FormField random_invariant_field(int kmax, std::uint64_t seed, bool real = false);

}  // namespace hk
