#include "hk/spectral_forms.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <new>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx kTwoPiI{0.0, kTwoPi};

// Nonzero pattern of a fiber operator, for cheap application across modes.
// Real operators (the common case) skip the complex products.
struct SparseFiberOp {
    struct Entry {
        int row;
        int col;
        cplx value;
    };
    std::vector<Entry> entries;
    bool real = true;

    explicit SparseFiberOp(const FiberOp& op) {
        for (int c = 0; c < kBlades; ++c)
            for (int r = 0; r < kBlades; ++r)
                if (op(r, c) != cplx{}) {
                    entries.push_back({r, c, op(r, c)});
                    real = real && op(r, c).imag() == 0.0;
                }
    }

    void apply(const Multivector& a, Multivector& out) const {
        const FiberVec& in = a.coeffs();
        FiberVec& o = out.coeffs();
        if (real)
            for (const auto& e : entries) o[e.row] += e.value.real() * in[e.col];
        else
            for (const auto& e : entries) o[e.row] += e.value * in[e.col];
    }

    Multivector operator()(const Multivector& a) const {
        Multivector out;
        apply(a, out);
        return out;
    }
};

void require_same_truncation(const FormField& a, const FormField& b) {
    if (a.kmax() != b.kmax()) throw std::invalid_argument("form fields have different truncations");
}

// Signed index pairs of dxi^dir ^ . on the 16 blades; contraction by dxi^dir
// is the transpose.
struct WedgeEntry {
    int src;
    int dst;
    int dir;
    double sign;
};

constexpr std::array<WedgeEntry, 32> kWedgeTable = [] {
    std::array<WedgeEntry, 32> t{};
    std::size_t n = 0;
    for (int mask = 0; mask < kBlades; ++mask)
        for (int dir = 0; dir < kDim; ++dir) {
            if (mask & (1 << dir)) continue;
            const int below = std::popcount(static_cast<unsigned>(mask & ((1 << dir) - 1)));
            t[n++] = {mask, mask | (1 << dir), dir, below % 2 ? -1.0 : 1.0};
        }
    return t;
}();

// 2 pi i (A k) ^ a_k on every mode, or for Adjoint its L^2 adjoint
// -2 pi i iota(A k) (A real).
template <bool Adjoint>
FormField differential(const Mat4& A, const FormField& a) {
    FormField out(a.kmax());
    for_each_mode(a.kmax(), [&](std::size_t idx, const Vec4& k) {
        const FiberVec& in = a[idx].coeffs();
        const Vec4 w = (Adjoint ? -kTwoPi : kTwoPi) * (A * k);
        FiberVec& o = out[idx].coeffs();
        for (const auto& e : kWedgeTable) {
            // i c z = (-c Im z, c Re z)
            const double c = e.sign * w[e.dir];
            const cplx z = Adjoint ? in[e.dst] : in[e.src];
            cplx& t = Adjoint ? o[e.src] : o[e.dst];
            t += cplx(-c * z.imag(), c * z.real());
        }
    });
    return out;
}

const FiberOp& cached_group(int which, bool inverse) {
    static const std::array<FiberOp, 6> ops = [] {
        std::array<FiberOp, 6> o;
        for (int i = 0; i < 3; ++i) {
            o[2 * i] = group_op(generators()[i]);
            o[2 * i + 1] = o[2 * i].inverse();
        }
        return o;
    }();
    return ops[2 * which + (inverse ? 1 : 0)];
}

int generator_index(const Structure& c) {
    for (int i = 0; i < 3; ++i)
        if (c.quaternion() == generators()[i].quaternion()) return i;
    return -1;
}

FiberOp group_matrix(const Structure& c, bool inverse) {
    const int g = generator_index(c);
    if (g >= 0) return cached_group(g, inverse);
    const FiberOp m = group_op(c);
    return inverse ? FiberOp(m.inverse()) : m;
}

}  // namespace

namespace detail {

namespace {

struct BlockCache {
    static constexpr std::size_t kCapacity = 16;
    std::vector<std::pair<void*, std::size_t>> free;
    ~BlockCache() {
        for (auto& [p, bytes] : free) ::operator delete(p, std::align_val_t{alignof(Multivector)});
    }
};

BlockCache& block_cache() {
    thread_local BlockCache cache;
    return cache;
}

}  // namespace

void* acquire_block(std::size_t bytes) {
    auto& free = block_cache().free;
    for (auto it = free.rbegin(); it != free.rend(); ++it)
        if (it->second == bytes) {
            void* p = it->first;
            free.erase(std::next(it).base());
            return p;
        }
    return ::operator new(bytes, std::align_val_t{alignof(Multivector)});
}

void release_block(void* p, std::size_t bytes) noexcept {
    auto& cache = block_cache();
    if (cache.free.size() < BlockCache::kCapacity) {
        try {
            cache.free.emplace_back(p, bytes);
            return;
        } catch (...) {
        }
    }
    ::operator delete(p, std::align_val_t{alignof(Multivector)});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FormField

FormField::FormField(int kmax) : kmax_(kmax) {
    if (kmax < 0) throw std::invalid_argument("truncation must be nonnegative");
    const auto s = static_cast<std::size_t>(side());
    modes_.resize(s * s * s * s);
}

FormField FormField::single_mode(int kmax, const ModeIndex& k, const Multivector& value) {
    FormField f(kmax);
    f.at(k) = value;
    return f;
}

bool FormField::contains(const ModeIndex& k) const {
    return std::all_of(k.begin(), k.end(), [&](int c) { return std::abs(c) <= kmax_; });
}

std::size_t FormField::index_of(const ModeIndex& k) const {
    if (!contains(k)) throw std::out_of_range("mode outside truncation");
    std::size_t idx = 0;
    for (int c : k) idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(c + kmax_);
    return idx;
}

ModeIndex FormField::mode_at(std::size_t index) const {
    ModeIndex k{};
    const auto s = static_cast<std::size_t>(side());
    for (int a = 3; a >= 0; --a) {
        k[a] = static_cast<int>(index % s) - kmax_;
        index /= s;
    }
    return k;
}

double FormField::norm() const {
    double s = 0.0;
    for (const auto& m : modes_) s += m.coeffs().squaredNorm();
    return std::sqrt(s);
}

double FormField::max_abs() const {
    double m = 0.0;
    for (const auto& v : modes_) m = std::max(m, v.coeffs().cwiseAbs2().maxCoeff());
    return std::sqrt(m);
}

bool FormField::is_real(double tol) const {
    for (std::size_t i = 0; i < modes_.size(); ++i)
        if ((modes_[i].coeffs() - modes_[mirror(i)].coeffs().conjugate()).cwiseAbs().maxCoeff() > tol) return false;
    return true;
}

FormField FormField::grade(int degree) const {
    FormField out(kmax_);
    for (std::size_t i = 0; i < modes_.size(); ++i) out.modes_[i] = modes_[i].grade(degree);
    return out;
}

int FormField::top_degree(double tol) const {
    int top = -1;
    for (const auto& m : modes_)
        for (int mask = 0; mask < kBlades; ++mask)
            if (std::abs(m[static_cast<std::uint8_t>(mask)]) > tol) top = std::max(top, std::popcount(static_cast<unsigned>(mask)));
    return top;
}

FormField& FormField::operator+=(const FormField& o) {
    require_same_truncation(*this, o);
    for (std::size_t i = 0; i < modes_.size(); ++i) modes_[i] += o.modes_[i];
    return *this;
}

FormField& FormField::operator-=(const FormField& o) {
    require_same_truncation(*this, o);
    for (std::size_t i = 0; i < modes_.size(); ++i) modes_[i] -= o.modes_[i];
    return *this;
}

FormField& FormField::operator*=(cplx s) {
    for (auto& m : modes_) m *= s;
    return *this;
}

cplx inner(const FormField& a, const FormField& b) {
    require_same_truncation(a, b);
    cplx s{};
    for (std::size_t i = 0; i < a.mode_count(); ++i) s += inner(a[i], b[i]);
    return s;
}

// ---------------------------------------------------------------------------
// Operators

OperatorLabel OperatorLabel::adjoint() const {
    OperatorLabel out = *this;
    switch (kind) {
    case OpKind::D: out.kind = OpKind::DAdjoint; break;
    case OpKind::DAdjoint: out.kind = OpKind::D; break;
    case OpKind::Lefschetz: out.kind = OpKind::LefschetzDual; break;
    case OpKind::LefschetzDual: out.kind = OpKind::Lefschetz; break;
    default: break;  // self-adjoint
    }
    return out;
}

std::string OperatorLabel::name() const {
    auto quat = [](const Quaternion& q) {
        if (q == Quaternion::one()) return std::string{};
        if (q == Quaternion::i()) return std::string{"_I"};
        if (q == Quaternion::j()) return std::string{"_J"};
        if (q == Quaternion::k()) return std::string{"_K"};
        return "_x(" + std::to_string(q.w) + "," + std::to_string(q.x) + "," + std::to_string(q.y) + "," + std::to_string(q.z) + ")";
    };
    switch (kind) {
    case OpKind::D: return "d" + quat(x);
    case OpKind::DAdjoint: return "d" + quat(x) + "*";
    case OpKind::Grading: return "N";
    case OpKind::Hat: return "hat" + quat(x);
    case OpKind::Laplacian: return "Delta";
    case OpKind::Green: return "G";
    case OpKind::Harmonic: return "H";
    case OpKind::Lefschetz: return "L_" + Structure::from_sigma(sigma).name();
    case OpKind::LefschetzDual: return "Lambda_" + Structure::from_sigma(sigma).name();
    }
    return "?";
}

FormField apply_fiber(const FiberOp& op, const FormField& a) {
    const SparseFiberOp sparse(op);
    FormField out(a.kmax());
    for (std::size_t i = 0; i < a.mode_count(); ++i) sparse.apply(a[i], out[i]);
    return out;
}

FormField apply(const OperatorLabel& op, const FormField& a) {
    switch (op.kind) {
    case OpKind::D: return quaternionic_d(op.x, a);
    case OpKind::DAdjoint: return adjoint_d(op.adjoint(), a);
    case OpKind::Grading: return grading(a);
    case OpKind::Hat: return hat(op.x, a);
    case OpKind::Laplacian: return laplacian(a);
    case OpKind::Green: return green(a);
    case OpKind::Harmonic: return harmonic_project(a);
    case OpKind::Lefschetz: return apply_fiber(lefschetz_op(Structure::from_sigma(op.sigma)), a);
    case OpKind::LefschetzDual: return apply_fiber(lefschetz_dual_op(Structure::from_sigma(op.sigma)), a);
    }
    throw std::invalid_argument("unknown operator");
}

FormField exterior_d(const FormField& a) { return differential<false>(Mat4::Identity(), a); }

FormField twisted_d(const Structure& c, const FormField& a) {
    return apply_fiber(group_matrix(c, false), exterior_d(apply_fiber(group_matrix(c, true), a)));
}

FormField twisted_d_commutator(const Structure& c, const FormField& a) {
    const FiberOp ad = ad_op(c);
    return apply_fiber(ad, exterior_d(a)) - exterior_d(apply_fiber(ad, a));
}

FormField quaternionic_d(const Quaternion& x, const FormField& a) { return differential<false>(left_mult(x), a); }

FormField adjoint_d(const OperatorLabel& label, const FormField& a) {
    if (label.kind != OpKind::D) throw std::invalid_argument("adjoint_d expects d, d_C or d_x");
    return differential<true>(left_mult(label.x), a);
}

FormField laplacian(const FormField& a) {
    FormField out(a.kmax());
    for_each_mode(a.kmax(), [&](std::size_t idx, const Vec4& k) { out[idx] = (4.0 * std::numbers::pi * std::numbers::pi * k.squaredNorm()) * a[idx]; });
    return out;
}

FormField laplacian_of(const OperatorLabel& label, const FormField& a) {
    const OperatorLabel adj = label.adjoint();
    return apply(label, apply(adj, a)) + apply(adj, apply(label, a));
}

FormField green(const FormField& a) {
    FormField out(a.kmax());
    for_each_mode(a.kmax(), [&](std::size_t idx, const Vec4& k) {
        const double lambda = 4.0 * std::numbers::pi * std::numbers::pi * k.squaredNorm();
        if (lambda > 0.0) out[idx] = (1.0 / lambda) * a[idx];
    });
    return out;
}

FormField harmonic_project(const FormField& a) {
    FormField out(a.kmax());
    const ModeIndex zero{0, 0, 0, 0};
    out.at(zero) = a.at(zero);
    return out;
}

FormField grading(const FormField& a) { return apply_fiber(grading_op(), a); }

FormField hat(const Quaternion& x, const FormField& a) { return apply_fiber(hat_op(x), a); }

FormField group_action(const Structure& c, const FormField& a) { return apply_fiber(group_matrix(c, false), a); }

FormField group_action(const Quaternion& unit, const FormField& a) { return apply_fiber(group_op(unit), a); }

FormField group_action_inverse(const Structure& c, const FormField& a) { return apply_fiber(group_matrix(c, true), a); }

double invariance_defect(const FormField& a) {
    double worst = 0.0;
    for (const auto& c : generators()) worst = std::max(worst, apply_fiber(ad_op(c), a).norm());
    return worst;
}

// ---------------------------------------------------------------------------
// Residuals

namespace {

// |a|^2, |b|^2 and |a + sign b|^2 in one pass.
std::array<double, 3> pair_norms(const FormField& a, const FormField& b, double sign) {
    require_same_truncation(a, b);
    std::array<double, 3> n{};
    for (std::size_t i = 0; i < a.mode_count(); ++i) {
        const FiberVec& x = a[i].coeffs();
        const FiberVec& y = b[i].coeffs();
        for (int j = 0; j < kBlades; ++j) {
            n[0] += std::norm(x[j]);
            n[1] += std::norm(y[j]);
            n[2] += std::norm(x[j] + sign * y[j]);
        }
    }
    return n;
}

}  // namespace

double relative_residual(const FormField& lhs, const FormField& rhs) {
    const auto n = pair_norms(lhs, rhs, -1.0);
    const double scale = std::sqrt(std::max(n[0], n[1]));
    return scale == 0.0 ? 0.0 : std::sqrt(n[2]) / scale;
}

double cancellation_residual(const FormField& a, const FormField& b) {
    const auto n = pair_norms(a, b, 1.0);
    const double scale = std::sqrt(n[0]) + std::sqrt(n[1]);
    return scale == 0.0 ? 0.0 : std::sqrt(n[2]) / scale;
}

namespace {

// [A, B] a with A, B given as callables on fields.
template <class A, class B>
FormField commutator(A&& op_a, B&& op_b, const FormField& f) {
    return op_a(op_b(f)) - op_b(op_a(f));
}

}  // namespace

std::vector<NamedResidual> kodaira_suite(const FormField& a) {
    std::vector<NamedResidual> out;
    const auto d = [](const FormField& f) { return exterior_d(f); };
    const auto d_star = [](const FormField& f) { return adjoint_d(OperatorLabel::d(), f); };

    double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
    for (const auto& c : generators()) {
        const FiberOp lef = lefschetz_op(c);
        const FiberOp lam = lefschetz_dual_op(c);
        const auto L = [&](const FormField& f) { return apply_fiber(lef, f); };
        const auto Lam = [&](const FormField& f) { return apply_fiber(lam, f); };
        const auto dc = [&](const FormField& f) { return twisted_d(c, f); };
        const auto dc_star = [&](const FormField& f) { return adjoint_d(OperatorLabel::d_c(c), f); };

        r1 = std::max(r1, relative_residual(d_star(a), -1.0 * commutator(Lam, dc, a)));
        r2 = std::max(r2, relative_residual(dc_star(a), commutator(Lam, d, a)));
        r3 = std::max(r3, relative_residual(d(a), commutator(L, dc_star, a)));
        r4 = std::max(r4, relative_residual(dc(a), -1.0 * commutator(L, d_star, a)));
    }
    out.push_back({"d* = -[Lambda_C, d_C]", r1});
    out.push_back({"d_C* = [Lambda_C, d]", r2});
    out.push_back({"d = [L_C, d_C*]", r3});
    out.push_back({"d_C = -[L_C, d*]", r4});

    const Structure I = Structure::I(), J = Structure::J(), K = Structure::K();
    const FiberOp lam_i = lefschetz_dual_op(I);
    const auto Lam_I = [&](const FormField& f) { return apply_fiber(lam_i, f); };
    const auto d_J = [&](const FormField& f) { return twisted_d(J, f); };
    const auto d_K = [&](const FormField& f) { return twisted_d(K, f); };
    out.push_back({"d_K* = [Lambda_I, d_J]", relative_residual(adjoint_d(OperatorLabel::d_c(K), a), commutator(Lam_I, d_J, a))});
    out.push_back({"d_J* = [d_K, Lambda_I]", relative_residual(adjoint_d(OperatorLabel::d_c(J), a), commutator(d_K, Lam_I, a))});

    // conjugation by J
    const auto conj_J = [&](auto&& op, const FormField& f) { return group_action(J, op(group_action_inverse(J, f))); };
    out.push_back({"d_J = J d J^-1", relative_residual(twisted_d(J, a), conj_J(d, a))});
    out.push_back({"d_K = -J d_I J^-1", relative_residual(twisted_d(K, a), -1.0 * conj_J([&](const FormField& f) { return twisted_d(I, f); }, a))});
    out.push_back({"J Lambda_I J^-1 = -Lambda_I", relative_residual(conj_J(Lam_I, a), -1.0 * Lam_I(a))});
    const FiberOp lef_i = lefschetz_op(I);
    const auto L_I = [&](const FormField& f) { return apply_fiber(lef_i, f); };
    out.push_back({"J L_I J^-1 = -L_I", relative_residual(conj_J(L_I, a), -1.0 * L_I(a))});
    return out;
}

double conjugation_law(const Quaternion& unit, const Quaternion& x, const FormField& a) {
    const FiberOp u = group_op(unit);
    const FiberOp u_inv = u.inverse();
    const FormField lhs = apply_fiber(u, quaternionic_d(x, apply_fiber(u_inv, a)));
    const FormField rhs = quaternionic_d(unit * x, a);
    return relative_residual(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Sampling

FormField random_field(int kmax, std::uint64_t seed, bool real) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    FormField f(kmax);
    for (std::size_t i = 0; i < f.mode_count(); ++i)
        for (int mask = 0; mask < kBlades; ++mask) f[i][static_cast<std::uint8_t>(mask)] = cplx(gauss(rng), gauss(rng));
    if (!real) return f;
    FormField sym(kmax);
    for (std::size_t i = 0; i < f.mode_count(); ++i)
        sym[i] = Multivector(0.5 * (f[i].coeffs() + f[f.mirror(i)].coeffs().conjugate()));
    return sym;
}

FormField random_field_of_degree(int kmax, int degree, std::uint64_t seed, bool real) {
    return random_field(kmax, seed, real).grade(degree);
}

FormField random_invariant_field(int kmax, std::uint64_t seed, bool real) {
    return apply_fiber(invariant_projector(), random_field(kmax, seed, real));
}

}  // namespace hk
