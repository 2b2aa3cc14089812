#include "hk/exterior.hpp"

namespace hk {

namespace {

constexpr std::array<std::array<int, kBlades>, kBlades> make_wedge_table() {
    std::array<std::array<int, kBlades>, kBlades> t{};
    for (int a = 0; a < kBlades; ++a)
        for (int b = 0; b < kBlades; ++b) t[a][b] = wedge_sign(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
    return t;
}

constexpr auto kWedgeSign = make_wedge_table();

// Sign picked up when contracting direction `dir` out of `mask`.
constexpr int contraction_sign(std::uint8_t mask, int dir) {
    return (std::popcount(static_cast<unsigned>(mask & ((1u << dir) - 1))) & 1) ? -1 : 1;
}

}  // namespace

Multivector Multivector::scalar(cplx value) {
    Multivector m;
    m.coeffs_[0] = value;
    return m;
}

Multivector Multivector::blade(BasisBlade b, cplx value) {
    Multivector m;
    m.coeffs_[b.mask()] = value;
    return m;
}

Multivector Multivector::one_form(const CVec4& v) {
    Multivector m;
    for (int a = 0; a < kDim; ++a) m.coeffs_[1 << a] = v[a];
    return m;
}

Multivector Multivector::grade(int degree) const {
    Multivector m;
    for (int mask = 0; mask < kBlades; ++mask)
        if (std::popcount(static_cast<unsigned>(mask)) == degree) m.coeffs_[mask] = coeffs_[mask];
    return m;
}

Multivector wedge(const Multivector& a, const Multivector& b) {
    Multivector out;
    for (int ma = 0; ma < kBlades; ++ma) {
        const cplx ca = a[static_cast<std::uint8_t>(ma)];
        if (ca == cplx{}) continue;
        for (int mb = 0; mb < kBlades; ++mb) {
            const int s = kWedgeSign[ma][mb];
            if (s == 0) continue;
            out[static_cast<std::uint8_t>(ma | mb)] += static_cast<double>(s) * ca * b[static_cast<std::uint8_t>(mb)];
        }
    }
    return out;
}

Multivector exterior_mul(const CVec4& v, const Multivector& a) {
    Multivector out;
    for (int mask = 0; mask < kBlades; ++mask) {
        const cplx c = a[static_cast<std::uint8_t>(mask)];
        if (c == cplx{}) continue;
        for (int dir = 0; dir < kDim; ++dir) {
            if (mask & (1 << dir)) continue;
            // dxi^dir ^ B: dxi^dir hops over the factors of B below it
            out[static_cast<std::uint8_t>(mask | (1 << dir))] += static_cast<double>(contraction_sign(static_cast<std::uint8_t>(mask), dir)) * v[dir] * c;
        }
    }
    return out;
}

Multivector interior(const CVec4& v, const Multivector& a) {
    Multivector out;
    for (int mask = 0; mask < kBlades; ++mask) {
        const cplx c = a[static_cast<std::uint8_t>(mask)];
        if (c == cplx{}) continue;
        for (int dir = 0; dir < kDim; ++dir) {
            if (!(mask & (1 << dir))) continue;
            out[static_cast<std::uint8_t>(mask & ~(1 << dir))] += static_cast<double>(contraction_sign(static_cast<std::uint8_t>(mask), dir)) * v[dir] * c;
        }
    }
    return out;
}

Multivector hodge_star(const Multivector& a) {
    Multivector out;
    for (int mask = 0; mask < kBlades; ++mask) {
        const int comp = kVolMask & ~mask;
        out[static_cast<std::uint8_t>(comp)] = static_cast<double>(kWedgeSign[mask][comp]) * a[static_cast<std::uint8_t>(mask)];
    }
    return out;
}

cplx inner(const Multivector& a, const Multivector& b) { return a.coeffs().dot(b.coeffs()); }

Multivector grading(const Multivector& a) {
    Multivector out = a;
    for (int mask = 0; mask < kBlades; ++mask) out[static_cast<std::uint8_t>(mask)] *= static_cast<double>(std::popcount(static_cast<unsigned>(mask)));
    return out;
}

namespace {

template <class F>
FiberOp matrix_of(F&& f) {
    FiberOp m;
    for (int col = 0; col < kBlades; ++col) m.col(col) = f(Multivector::blade(static_cast<std::uint8_t>(col))).coeffs();
    return m;
}

}  // namespace

FiberOp exterior_mul_op(const CVec4& v) {
    return matrix_of([&](const Multivector& b) { return exterior_mul(v, b); });
}

FiberOp interior_op(const CVec4& v) {
    return matrix_of([&](const Multivector& b) { return interior(v, b); });
}

FiberOp hodge_star_op() { return matrix_of([](const Multivector& b) { return hodge_star(b); }); }

FiberOp grading_op() { return matrix_of([](const Multivector& b) { return grading(b); }); }

FiberOp degree_projector(int degree) {
    FiberOp p = FiberOp::Zero();
    for (int mask = 0; mask < kBlades; ++mask)
        if (std::popcount(static_cast<unsigned>(mask)) == degree) p(mask, mask) = 1.0;
    return p;
}

}  // namespace hk
