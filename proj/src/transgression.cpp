#include "hk/transgression.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hk {

namespace {

FormField green_power(const FormField& a, int power) {
    FormField out(a.kmax());
    for_each_mode(a.kmax(), [&](std::size_t idx, const Vec4& k) {
        const double lambda = 4.0 * std::numbers::pi * std::numbers::pi * k.squaredNorm();
        if (lambda > 0.0) out[idx] = std::pow(lambda, -power) * a[idx];
    });
    return out;
}

double derivative_scale(const FormField& a) { return 2.0 * std::numbers::pi * std::max(1, 2 * a.kmax()) * a.norm(); }

FormField d_c_adjoint(const Structure& c, const FormField& a) { return adjoint_d(OperatorLabel::d_c(c), a); }

double reconstruction_residual(const FormField& rebuilt, const FormField& target) {
    const double scale = target.norm();
    return scale == 0.0 ? rebuilt.norm() : (rebuilt - target).norm() / scale;
}

// Runs the checks in order, recording each residual, and throws at the first
// failure.
class Validator {
public:
    Validator(const FormField& target, double tol) : target_(target), tol_(tol) {}

    void exact() { check("harmonic", harmonic_residual(target_), PreconditionKind::NotExact); }
    void closed() { check("d", closedness_residual(target_), PreconditionKind::NotClosed); }
    void dc_closed(const Structure& c) {
        check("d_" + c.name(), dc_closedness_residual(c, target_), PreconditionKind::NotDCClosed, c.name());
    }
    void degree_at_least(int degree) {
        const int top = target_.top_degree(tol_ * target_.max_abs());
        if (top >= 0 && top < degree) throw PreconditionError(PreconditionKind::DegreeTooLow, static_cast<double>(top));
    }

    std::vector<NamedResidual> take() { return std::move(residuals_); }

private:
    void check(std::string name, double r, PreconditionKind kind, std::optional<std::string> structure = std::nullopt) {
        residuals_.push_back({std::move(name), r});
        if (r > tol_) throw PreconditionError(kind, r, std::move(structure));
    }

    const FormField& target_;
    double tol_;
    std::vector<NamedResidual> residuals_;
};

}  // namespace

std::string to_string(PreconditionKind kind) {
    switch (kind) {
    case PreconditionKind::NotClosed: return "NotClosed";
    case PreconditionKind::NotExact: return "NotExact";
    case PreconditionKind::NotDCClosed: return "NotDCClosed";
    case PreconditionKind::DegreeTooLow: return "DegreeTooLow";
    }
    return "?";
}

PreconditionError::PreconditionError(PreconditionKind kind, double residual, std::optional<std::string> structure)
    : std::runtime_error(to_string(kind) + (structure ? "(" + *structure + ")" : std::string{}) +
                         (kind == PreconditionKind::DegreeTooLow ? ": top degree " + std::to_string(static_cast<int>(residual))
                                                                 : ": residual " + std::to_string(residual))),
      kind_(kind),
      residual_(residual),
      structure_(std::move(structure)) {}

double closedness_residual(const FormField& a) {
    const double scale = derivative_scale(a);
    return scale == 0.0 ? 0.0 : exterior_d(a).norm() / scale;
}

double dc_closedness_residual(const Structure& c, const FormField& a) {
    const double scale = derivative_scale(a);
    return scale == 0.0 ? 0.0 : twisted_d(c, a).norm() / scale;
}

double harmonic_residual(const FormField& a) {
    const double scale = a.norm();
    return scale == 0.0 ? 0.0 : harmonic_project(a).norm() / scale;
}

FormField hyper_d(const FormField& a) {
    return exterior_d(twisted_d(Structure::I(), twisted_d(Structure::J(), twisted_d(Structure::K(), a))));
}

FormField hyper_d_adjoint(const FormField& a) {
    return adjoint_d(OperatorLabel::d(),
                     d_c_adjoint(Structure::I(), d_c_adjoint(Structure::J(), d_c_adjoint(Structure::K(), a))));
}

TransgressionResult transgress1(const FormField& target, double tol) {
    Validator v(target, tol);
    v.exact();
    v.closed();
    TransgressionResult r{kTransgressionSign1 * adjoint_d(OperatorLabel::d(), green(target)), 0.0, 1, kTransgressionSign1, v.take()};
    r.residual = reconstruction_residual(exterior_d(r.potential), target);
    return r;
}

TransgressionResult transgress2(const Structure& c, const FormField& target, double tol) {
    Validator v(target, tol);
    v.exact();
    v.closed();
    v.dc_closed(c);
    const FormField chi = static_cast<double>(kTransgressionSign2) *
                          adjoint_d(OperatorLabel::d(), d_c_adjoint(c, green_power(target, 2)));
    TransgressionResult r{chi, 0.0, 2, kTransgressionSign2, v.take()};
    r.residual = reconstruction_residual(exterior_d(twisted_d(c, chi)), target);
    return r;
}

TransgressionResult transgress4(const FormField& target, double tol) {
    Validator v(target, tol);
    v.exact();
    v.closed();
    v.degree_at_least(4);
    for (const auto& c : generators()) v.dc_closed(c);
    const FormField tau = static_cast<double>(kTransgressionSign4) * hyper_d_adjoint(green_power(target, 4));
    TransgressionResult r{tau, 0.0, 4, kTransgressionSign4, v.take()};
    r.residual = reconstruction_residual(hyper_d(tau), target);
    return r;
}

LaplConstant measure_lapl_constant(const std::vector<ModeIndex>& modes, double tol) {
    if (modes.empty()) throw std::invalid_argument("no modes given");
    LaplConstant out;
    out.modes = modes;
    for (const auto& k : modes) {
        if (k == ModeIndex{0, 0, 0, 0}) throw std::invalid_argument("mode k = 0 is harmonic");
        int kmax = 0;
        for (int c : k) kmax = std::max(kmax, std::abs(c));
        FormField phi(kmax);
        phi.at(k) = Multivector::scalar(1.0);
        phi.at({-k[0], -k[1], -k[2], -k[3]}) = Multivector::scalar(1.0);

        const FormField lhs = hyper_d(phi);
        FormField rhs = laplacian(laplacian(phi));
        for (std::size_t i = 0; i < rhs.mode_count(); ++i) rhs[i] = wedge(Multivector::volume(), rhs[i]);

        const double ck = std::real(inner(rhs, lhs)) / std::real(inner(rhs, rhs));
        out.per_mode.push_back(ck);
        out.proportionality_defect = std::max(out.proportionality_defect, (lhs - ck * rhs).norm() / lhs.norm());
    }
    const auto [lo, hi] = std::minmax_element(out.per_mode.begin(), out.per_mode.end());
    out.spread = *hi - *lo;
    double sum = 0.0;
    for (double c : out.per_mode) sum += c;
    out.value = sum / static_cast<double>(out.per_mode.size());
    if (out.spread > tol || out.proportionality_defect > tol)
        throw InconsistentConstant("per-mode constants disagree: spread " + std::to_string(out.spread) +
                                   ", proportionality defect " + std::to_string(out.proportionality_defect));
    return out;
}

std::vector<ModeIndex> default_lapl_modes(int count) {
    if (count < 1) throw std::invalid_argument("need at least one mode");
    std::vector<ModeIndex> all;
    for (int r = 1; static_cast<int>(all.size()) < count; ++r) {
        all.clear();
        for_each_mode(r, [&](std::size_t, const Vec4& k) {
            const ModeIndex m{static_cast<int>(k[0]), static_cast<int>(k[1]), static_cast<int>(k[2]), static_cast<int>(k[3])};
            // keep the representative whose first nonzero entry is positive
            for (int c : m) {
                if (c == 0) continue;
                if (c > 0 && k.squaredNorm() <= r * r) all.push_back(m);
                break;
            }
        });
    }
    std::stable_sort(all.begin(), all.end(), [](const ModeIndex& a, const ModeIndex& b) {
        auto n2 = [](const ModeIndex& m) { return m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]; };
        return n2(a) < n2(b);
    });
    all.resize(static_cast<std::size_t>(count));
    return all;
}

}  // namespace hk
