#pragma once

// Heat traces of twisted scalar Laplacians on T^4 and the regularized
// integral  int_{->0}^inf G(t) dt/t = zeta_G'(0).

#include "hk/exterior.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hk {

class QuadratureFailure : public std::runtime_error {
public:
    QuadratureFailure(const std::string& where, double estimate, double error)
        : std::runtime_error(where + ": quadrature did not converge (estimate " + std::to_string(estimate) + ", error " +
                             std::to_string(error) + ")"),
          estimate_(estimate),
          error_(error) {}
    double estimate() const { return estimate_; }
    double error() const { return error_; }

private:
    double estimate_;
    double error_;
};

class TruncationInsufficient : public std::runtime_error {
public:
    explicit TruncationInsufficient(const std::string& what) : std::runtime_error(what) {}
};

/// fiber_rank copies of the scalar Laplacian with eigenvalues
/// scale * 4 pi^2 |k + theta|^2, k in Z^4.
struct SpectrumModel {
    Vec4 theta = Vec4::Zero();
    int fiber_rank = 1;
    double scale = 1.0;

    /// theta reduced to [0,1)^4; throws std::invalid_argument for a
    /// nonpositive rank or scale or a non-finite theta.
    static SpectrumModel make(const Vec4& theta, int fiber_rank = 1, double scale = 1.0);

    bool untwisted() const { return theta.isZero(0.0); }
    /// Number of zero eigenvalues: fiber_rank when theta = 0, else 0.
    int kernel_dim() const { return untwisted() ? fiber_rank : 0; }
    /// Coefficient A of the small-t leading term A t^{-2}.
    double leading_coefficient() const;
};

/// Tr' exp(-t Delta): kernel excluded. Factorizes into four one-dimensional
/// theta sums, each evaluated directly or via Poisson summation.
double heat_trace(const SpectrumModel& model, double t);

/// heat_trace(t) - A t^{-2} + kernel_dim, computed without cancellation.
double heat_trace_remainder(const SpectrumModel& model, double t);

/// Brute-force lattice sum over |k + theta| <= radius. Throws
/// TruncationInsufficient when the bound on the omitted tail exceeds `tol`.
double heat_trace_direct(const SpectrumModel& model, double t, double radius, double tol = 1e-14);

/// Nonzero eigenvalues with |k + theta| <= radius as (lambda, multiplicity),
/// sorted by lambda.
std::vector<std::pair<double, int>> enumerate_eigenvalues(const SpectrumModel& model, double radius);

/// A heat-trace-like function with the declared small-t expansion
/// G(t) = sum_{i=-n}^{0} G_i t^i + O(t).
struct RegularizedIntegrand {
    std::function<double(double)> value;
    std::map<int, double> singular;  // exponent i <= 0 -> G_i
    /// Optional G(t) - sum_i G_i t^i computed accurately; defaults to the
    /// naive subtraction.
    std::function<double(double)> remainder;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// zeta_G'(0) via the Mellin split at `split`:
///   int_0^split (G - sum G_i t^i) dt/t + sum_{i<0} G_i split^i / i
///   + G_0 (log split + gamma) + int_split^inf G dt/t.
/// Throws QuadratureFailure if either piece misses `tol` (relative to its L1
/// norm), std::invalid_argument for split <= 0 or a positive exponent.
QuadratureResult regularized_integral(const RegularizedIntegrand& g, double split = 1.0, double tol = 1e-13);

}  // namespace hk
