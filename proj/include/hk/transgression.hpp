#pragma once

// Green-operator transgression on T^4:
//   order 1:  omega = d phi,            phi = d^* G omega
//   order 2:  omega = d d_C chi,        chi = s2 d^* d_C^* G^2 omega
//   order 4:  omega = d d_I d_J d_K tau, tau = s4 d^* d_I^* d_J^* d_K^* G^4 omega

#include "hk/spectral_forms.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

// Signs picked by reconstructing known targets; pinned by regression tests.
inline constexpr int kTransgressionSign1 = 1;
inline constexpr int kTransgressionSign2 = -1;
inline constexpr int kTransgressionSign4 = 1;

inline constexpr double kDefaultPreconditionTol = 1e-9;

enum class PreconditionKind { NotClosed, NotExact, NotDCClosed, DegreeTooLow };

std::string to_string(PreconditionKind kind);

class PreconditionError : public std::runtime_error {
public:
    PreconditionError(PreconditionKind kind, double residual, std::optional<std::string> structure = std::nullopt);

    PreconditionKind kind() const { return kind_; }
    double residual() const { return residual_; }
    /// Name of the failing structure for NotDCClosed.
    const std::optional<std::string>& structure() const { return structure_; }

private:
    PreconditionKind kind_;
    double residual_;
    std::optional<std::string> structure_;
};

struct TransgressionResult {
    FormField potential;
    double residual = 0.0;  // |reconstruction - target| / |target|, 0 for a zero target
    int order = 0;
    int sign = 1;
    std::vector<NamedResidual> precondition_residuals;
};

TransgressionResult transgress1(const FormField& target, double tol = kDefaultPreconditionTol);
TransgressionResult transgress2(const Structure& c, const FormField& target, double tol = kDefaultPreconditionTol);
TransgressionResult transgress4(const FormField& target, double tol = kDefaultPreconditionTol);

/// d d_I d_J d_K a.
FormField hyper_d(const FormField& a);
/// d^* d_I^* d_J^* d_K^* a.
FormField hyper_d_adjoint(const FormField& a);

// Scale-free precondition residuals.
/// |d a| / (2 pi |k|_max |a|).
double closedness_residual(const FormField& a);
/// |d_C a| / (2 pi |k|_max |a|).
double dc_closedness_residual(const Structure& c, const FormField& a);
/// |H a| / |a|.
double harmonic_residual(const FormField& a);

class InconsistentConstant : public std::runtime_error {
public:
    explicit InconsistentConstant(const std::string& what) : std::runtime_error(what) {}
};

struct LaplConstant {
    double value = 0.0;   // mean of the per-mode ratios
    double spread = 0.0;  // max - min of the per-mode ratios
    std::vector<ModeIndex> modes;
    std::vector<double> per_mode;
    /// Largest |lhs - c_k rhs| / |lhs| over modes: how far each lhs is from
    /// being a multiple of vol Delta^2 phi at all.
    double proportionality_defect = 0.0;
};

/// Ratio c_k with d d_I d_J d_K phi = c_k vol Delta^2 phi for the real
/// single-mode functions phi = e_k + e_{-k}. Throws std::invalid_argument for
/// an empty list or k = 0, InconsistentConstant if the spread exceeds `tol`.
LaplConstant measure_lapl_constant(const std::vector<ModeIndex>& modes, double tol = 1e-10);

/// The first `count` nonzero modes by increasing |k|^2, then lexicographic,
/// keeping one of each pair {k, -k}.
std::vector<ModeIndex> default_lapl_modes(int count);

}  // namespace hk
