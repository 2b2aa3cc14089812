#pragma once

// The spin module S = Lambda^*(W) of Cl(R^4) (x) C, with W the +i eigenspace
// of I on V^c = C^4, spanned by w1 = (e1 - i e2)/sqrt2, w2 = (e3 - i e4)/sqrt2.
// S has the ordered basis (1, w1, w2, w1^w2), indexed by the 2-bit mask.
//
// Kähler forms here follow omega'_C(u, v) = g(C u, v), which is minus the
// operator-layer kahler_form(C). With this sign tau(c(omega'_C)/2) = C and
// [e, f] = h.

#include "hk/quaternionic.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hk {

using SpinMat = Eigen::Matrix<cplx, 4, 4>;

enum class Parity { Even, Odd, Mixed };

struct CliffordOp {
    SpinMat matrix = SpinMat::Zero();
    Parity parity = Parity::Even;

    static CliffordOp from_matrix(const SpinMat& m);
};

CliffordOp operator*(const CliffordOp& a, const CliffordOp& b);
CliffordOp operator+(const CliffordOp& a, const CliffordOp& b);
CliffordOp operator*(cplx s, const CliffordOp& a);

/// w1 and w2 as vectors in V^c.
const std::array<CVec4, 2>& holomorphic_frame();

/// Exterior product and contraction by w_j on S.
SpinMat spin_exterior(int j);
SpinMat spin_interior(int j);

/// c(v) = sqrt2 eps(v_W) - sqrt2 iota(conj v_Wbar) for v in V^c.
CliffordOp clifford_action(const CVec4& v);
/// c(e_a), a in 0..3.
CliffordOp clifford_generator(int a);

/// Multivector -> Cl(V): e^{i1}^..^e^{ik} -> c^{i1}..c^{ik}.
CliffordOp quantize(const Multivector& form);

/// omega'_C = -kahler_form(C).
Multivector spin_kahler_form(const Structure& c);

/// Gamma = (sqrt -1)^{[(n+1)/2]} c^1 c^2 c^3 c^4 with n = 4.
CliffordOp chirality();

/// Embedded image of the basis of S in Lambda^*(V^c): 1, w1, w2, w1^w2.
std::array<Multivector, 4> spin_basis_forms();

struct Sl2Triple {
    CliffordOp h;  // c(omega'_I) / 2i
    CliffordOp e;  // (c(omega'_J) - i c(omega'_K)) / 4
    CliffordOp f;  // -(c(omega'_J) + i c(omega'_K)) / 4

    static Sl2Triple standard();
};

class Sl2NotClosed : public std::runtime_error {
public:
    explicit Sl2NotClosed(const std::string& what) : std::runtime_error(what) {}
};

struct Sl2Table {
    // rows [h,e], [h,f], [e,f]; columns coefficients of h, e, f
    std::array<std::string, 3> names{"[h,e]", "[h,f]", "[e,f]"};
    std::array<Eigen::Vector3cd, 3> coefficients;
    std::array<double, 3> residuals{};
};

/// Expresses each commutator in the (h, e, f) basis by least squares.
/// Throws Sl2NotClosed if a residual exceeds `tol`.
Sl2Table sl2_table(double tol = 1e-10);

// --- checks ---------------------------------------------------------------

/// max over the 16 ordered pairs of |c_a c_b + c_b c_a + 2 delta_ab|.
double clifford_relation_defect();

struct ChiralityReport {
    double square_defect = 0.0;         // |Gamma^2 - 1|
    double anticommutation_defect = 0.0;  // max_a |c_a Gamma + Gamma c_a|
    cplx supertrace = 0.0;                // tr Gamma
    double grading_defect = 0.0;        // |Gamma - (-1)^q| on the degree grading
};
ChiralityReport chirality_report();

/// |[quantize(omega'_C)/2, c(v)] - c(C v)| for each C in {I,J,K} and the
/// given vector, maximized.
double tau_map_defect(const CVec4& v);

/// |quantize(omega'_I) - i(2q - 2)| on each graded piece Cl^q(W)|1>.
double omega_grading_defect();

/// Eigenvalues of h with multiplicities, sorted ascending.
std::vector<std::pair<double, int>> grading_eigenvalues(double tol = 1e-10);

/// |c(x) c(v) c(x)^{-1} - c(x(v))| with c(x) = exp(sum phi_C quantize(omega'_C)/2)
/// and x(v) = exp(phi . (i,j,k)) v.
double sp1_conjugation_defect(const Vec3& phi, const CVec4& v);

struct OmegaCheck {
    double kappa = 0.0;        // e = kappa eps(Omega) under the identification
    double e_defect = 0.0;     // |e - kappa eps(Omega)|
    double f_defect = 0.0;     // |f - kappa iota(Omega)|, iota the adjoint of eps
    double subspace_defect = 0.0;  // eps(Omega) leaving the image of S
    double omega_norm2 = 0.0;      // |Omega|^2
    cplx f_on_omega = 0.0;         // <1| f |Omega>
    double f_vacuum = 0.0;         // |f |1>|
    double e_vacuum_defect = 0.0;  // |e|1> - kappa Omega|
};
/// Omega = (omega'_J - i omega'_K) / 4.
OmegaCheck omega_operator_check();

struct DiracReport {
    Vec4 theta = Vec4::Zero();
    int kmax = 0;
    double identification_defect = 0.0;  // |sqrt2 (d' + d'^*) - 2 pi i c(k + theta)|
    double square_defect = 0.0;          // |D^2 - 4 pi^2 |k + theta|^2| relative
    double parity_defect = 0.0;          // |D Gamma + Gamma D|
    bool even_odd_balanced = true;       // dim S+_lambda = dim S-_lambda, lambda != 0
    double min_even_to_odd_singular = 0.0;
    double supertrace_t1 = 0.0;          // Str e^{-D^2} over the truncation
};
/// Mode-wise Dirac operator sqrt2 (d'_I + d'_I^*) on (.,0)-forms, d'_I the
/// component of d raising the W-degree.
DiracReport dirac_block_check(const Vec4& theta, int kmax);

}  // namespace hk
