#include "hk/heat_trace.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hk {

namespace {

constexpr double kPi = std::numbers::pi;
// Below this value of scale * t the Poisson-dual sum converges faster.
constexpr double kPoissonThreshold = 0.05;
// exp(-kCutoff) is far below double precision relative to the leading term.
constexpr double kCutoff = 60.0;

// One factor sum_k exp(-4 pi^2 c t (k + theta)^2) of the heat trace, split as
// zero_term + rest (zero_term = 1 only for theta = 0) and, in the Poisson
// regime, as prefactor * (1 + eta).
struct AxisSum {
    double zero_term = 0.0;
    double rest = 0.0;
    double prefactor = 0.0;
    double eta = 0.0;
    bool poisson = false;
};

AxisSum axis_sum(double theta, double ct) {
    AxisSum a;
    a.zero_term = theta == 0.0 ? 1.0 : 0.0;
    if (ct < kPoissonThreshold) {
        a.poisson = true;
        a.prefactor = 1.0 / std::sqrt(4.0 * kPi * ct);
        for (int m = 1; static_cast<double>(m) * m / (4.0 * ct) < kCutoff; ++m)
            a.eta += 2.0 * std::exp(-static_cast<double>(m) * m / (4.0 * ct)) * std::cos(2.0 * kPi * m * theta);
        a.rest = a.prefactor * (1.0 + a.eta) - a.zero_term;
        return a;
    }
    const double s = 4.0 * kPi * kPi * ct;
    const double th = theta > 0.5 ? theta - 1.0 : theta;
    const int n = static_cast<int>(std::ceil(std::sqrt(kCutoff / s))) + 1;
    // smallest terms first
    for (int k = n; k >= 1; --k) {
        if (theta == 0.0) {
            a.rest += 2.0 * std::exp(-s * k * k);
        } else {
            a.rest += std::exp(-s * (k + th) * (k + th)) + std::exp(-s * (-k + th) * (-k + th));
        }
    }
    if (theta != 0.0) a.rest += std::exp(-s * th * th);
    return a;
}

std::array<AxisSum, 4> axis_sums(const SpectrumModel& m, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("heat trace needs t > 0");
    std::array<AxisSum, 4> out;
    for (int a = 0; a < 4; ++a) out[a] = axis_sum(m.theta[a], m.scale * t);
    return out;
}

// prod (1 + eps_a) - 1 without cancellation.
double product_minus_one(const std::array<AxisSum, 4>& axes) {
    double r = 0.0;
    for (const auto& a : axes) r = r + a.eta + r * a.eta;
    return r;
}

// prod (zero_term + rest) - prod zero_term, i.e. the kernel-free scalar trace.
double scalar_trace_prime(const std::array<AxisSum, 4>& axes) {
    double q = 0.0;
    double z = 1.0;
    for (const auto& a : axes) {
        q = (a.zero_term + a.rest) * q + a.rest * z;
        z *= a.zero_term;
    }
    return q;
}

}  // namespace

SpectrumModel SpectrumModel::make(const Vec4& theta, int fiber_rank, double scale) {
    if (fiber_rank < 1) throw std::invalid_argument("fiber rank must be positive");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("spectral scale must be positive");
    SpectrumModel m;
    for (int a = 0; a < 4; ++a) {
        if (!std::isfinite(theta[a])) throw std::invalid_argument("character must be finite");
        double r = theta[a] - std::floor(theta[a]);
        if (r >= 1.0) r = 0.0;
        m.theta[a] = r;
    }
    m.fiber_rank = fiber_rank;
    m.scale = scale;
    return m;
}

double SpectrumModel::leading_coefficient() const {
    const double d = 4.0 * kPi * scale;
    return fiber_rank / (d * d);
}

double heat_trace(const SpectrumModel& model, double t) {
    return model.fiber_rank * scalar_trace_prime(axis_sums(model, t));
}

double heat_trace_remainder(const SpectrumModel& model, double t) {
    const auto axes = axis_sums(model, t);
    if (std::all_of(axes.begin(), axes.end(), [](const AxisSum& a) { return a.poisson; })) {
        const double p = product_minus_one(axes);
        // t^{-2} overflows long before p stops underflowing
        return p == 0.0 ? 0.0 : model.leading_coefficient() / (t * t) * p;
    }
    return model.fiber_rank * scalar_trace_prime(axes) - model.leading_coefficient() / (t * t) + model.kernel_dim();
}

double heat_trace_direct(const SpectrumModel& model, double t, double radius, double tol) {
    if (!(t > 0.0)) throw std::invalid_argument("heat trace needs t > 0");
    const double s = model.scale * 4.0 * kPi * kPi * t;
    // lattice points with n <= |k + theta| < n + 1 number at most (2n + 3)^4
    double tail = 0.0;
    for (int n = static_cast<int>(std::floor(radius));; ++n) {
        const double term = std::pow(2.0 * n + 3.0, 4) * std::exp(-s * n * n);
        tail += term;
        if (term < 1e-30 && n > radius) break;
    }
    tail *= model.fiber_rank;
    if (tail > tol)
        throw TruncationInsufficient("lattice radius " + std::to_string(radius) + " leaves a tail bound of " +
                                     std::to_string(tail) + " at t = " + std::to_string(t));
    double sum = 0.0;
    for (const auto& [lambda, mult] : enumerate_eigenvalues(model, radius)) sum += mult * std::exp(-t * lambda);
    return sum;
}

std::vector<std::pair<double, int>> enumerate_eigenvalues(const SpectrumModel& model, double radius) {
    std::vector<double> lambdas;
    const int n = static_cast<int>(std::ceil(radius)) + 1;
    for (int k0 = -n; k0 <= n; ++k0)
        for (int k1 = -n; k1 <= n; ++k1)
            for (int k2 = -n; k2 <= n; ++k2)
                for (int k3 = -n; k3 <= n; ++k3) {
                    const Vec4 v = Vec4(k0, k1, k2, k3) + model.theta;
                    const double r2 = v.squaredNorm();
                    if (r2 == 0.0 || r2 > radius * radius) continue;
                    lambdas.push_back(model.scale * 4.0 * kPi * kPi * r2);
                }
    std::sort(lambdas.begin(), lambdas.end());
    std::vector<std::pair<double, int>> out;
    for (double l : lambdas) {
        if (!out.empty() && std::abs(l - out.back().first) <= 1e-12 * l)
            out.back().second += model.fiber_rank;
        else
            out.emplace_back(l, model.fiber_rank);
    }
    return out;
}

QuadratureResult regularized_integral(const RegularizedIntegrand& g, double split, double tol) {
    if (!(split > 0.0)) throw std::invalid_argument("split point must be positive");
    for (const auto& [i, c] : g.singular)
        if (i > 0) throw std::invalid_argument("singular exponents must be <= 0");

    const auto remainder = [&](double t) {
        if (g.remainder) return g.remainder(t);
        double r = g.value(t);
        for (const auto& [i, c] : g.singular) r -= c * std::pow(t, i);
        return r;
    };

    QuadratureResult out;
    double err0 = 0.0, l1_0 = 0.0, err1 = 0.0, l1_1 = 0.0;
    double head = 0.0, tail = 0.0;
    try {
        boost::math::quadrature::tanh_sinh<double> ts;
        head = ts.integrate([&](double t) { return remainder(t) / t; }, 0.0, split, tol, &err0, &l1_0);
    } catch (const std::exception& e) {
        throw QuadratureFailure(std::string("regularized integral on (0, split]: ") + e.what(), head, err0);
    }
    if (!std::isfinite(head) || err0 > 1e3 * tol * std::max(1.0, l1_0))
        throw QuadratureFailure("regularized integral on (0, split]", head, err0);
    try {
        boost::math::quadrature::exp_sinh<double> es;
        tail = es.integrate([&](double t) { return g.value(t) / t; }, split, std::numeric_limits<double>::infinity(), tol,
                            &err1, &l1_1);
    } catch (const std::exception& e) {
        throw QuadratureFailure(std::string("regularized integral on [split, inf): ") + e.what(), tail, err1);
    }
    if (!std::isfinite(tail) || err1 > 1e3 * tol * std::max(1.0, l1_1))
        throw QuadratureFailure("regularized integral on [split, inf)", tail, err1);

    double closed = 0.0;
    for (const auto& [i, c] : g.singular) {
        if (i < 0)
            closed += c * std::pow(split, i) / i;
        else
            closed += c * (std::log(split) + boost::math::constants::euler<double>());
    }
    out.value = head + closed + tail;
    out.error_estimate = err0 + err1;
    return out;
}

}  // namespace hk
