// hktorus: verification suites, transgression solves and torsion reports for
// differential forms on the flat hyperkähler torus T^4.

#include "hk/form_io.hpp"
#include "hk/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

enum Exit { kOk = 0, kUsage = 2, kPrecondition = 3, kNumerical = 4 };

void emit(const nlohmann::json& j, const std::string& out) {
    hk::validate_report(j);
    if (out.empty())
        std::cout << j.dump(2) << '\n';
    else
        hk::write_json(out, j);
}

hk::Structure parse_structure(const std::string& s) {
    if (s == "I") return hk::Structure::I();
    if (s == "J") return hk::Structure::J();
    if (s == "K") return hk::Structure::K();
    throw std::invalid_argument("structure must be I, J or K");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral verification toolkit for forms on the hyperkähler torus T^4"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "Run property and identity suites");
    std::vector<std::string> suites;
    int kmax = 0, samples = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    std::string theta_text, out, config_path;
    verify->add_option("--suite", suites, "Suite to run (repeatable); all when omitted");
    auto* o_kmax = verify->add_option("--kmax", kmax, "Fourier truncation");
    auto* o_tol = verify->add_option("--tol", tol, "Tolerance overriding every check's nominal value");
    auto* o_seed = verify->add_option("--seed", seed, "Random seed");
    auto* o_samples = verify->add_option("--samples", samples, "Random fields per property check");
    auto* o_theta = verify->add_option("--theta", theta_text, "Extra flat character a,b,c,d for the zeta suite");
    auto* o_out = verify->add_option("--out", out, "Report path (stdout when omitted)");
    verify->add_option("--config", config_path, "JSON config file; flags take precedence");

    // transgress
    auto* transgress = app.add_subcommand("transgress", "Solve for a transgression potential");
    int order = 0;
    std::string structure, input, t_out;
    std::optional<double> t_tol;
    transgress->add_option("--order", order, "1, 2 or 4")->required()->check(CLI::IsMember({1, 2, 4}));
    transgress->add_option("--structure", structure, "Complex structure for order 2")->check(CLI::IsMember({"I", "J", "K"}));
    transgress->add_option("--input", input, "Target form (JSON)")->required();
    transgress->add_option("--out", t_out, "Result path (stdout when omitted)");
    transgress->add_option("--tol", t_tol, "Precondition and reconstruction tolerance");

    // torsion
    auto* torsion = app.add_subcommand("torsion", "Analytic torsion, hypertorsion and beta_0");
    std::string tor_theta = "0,0,0,0", tor_out;
    torsion->add_option("--theta", tor_theta, "Flat character a,b,c,d");
    torsion->add_option("--out", tor_out, "Report path (stdout when omitted)");

    // lapl-constant
    auto* lapl = app.add_subcommand("lapl-constant", "Measure c in d d_I d_J d_K phi = c vol Delta^2 phi");
    int modes = 20;
    std::string lapl_out;
    lapl->add_option("--modes", modes, "Number of Fourier modes")->check(CLI::PositiveNumber);
    lapl->add_option("--out", lapl_out, "Report path (stdout when omitted)");

    // clifford
    auto* clifford = app.add_subcommand("clifford", "Spin module and Dirac operator checks");
    std::string cl_out;
    clifford->add_option("--out", cl_out, "Report path (stdout when omitted)");

    // fixture
    auto* fixture = app.add_subcommand("fixture", "Write a seeded target form");
    std::string kind, fx_out, fx_structure = "I";
    int fx_kmax = 4;
    std::uint64_t fx_seed = 1;
    fixture->add_option("--kind", kind, "order1, order2, order4, harmonic or generic")
        ->required()
        ->check(CLI::IsMember({"order1", "order2", "order4", "harmonic", "generic"}));
    fixture->add_option("--kmax", fx_kmax, "Fourier truncation")->check(CLI::NonNegativeNumber);
    fixture->add_option("--seed", fx_seed, "Random seed");
    fixture->add_option("--structure", fx_structure, "Structure for order2")->check(CLI::IsMember({"I", "J", "K"}));
    fixture->add_option("--out", fx_out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*verify) {
            hk::RunConfig cfg;
            if (!config_path.empty()) cfg = hk::merge_config(cfg, hk::read_json(config_path));
            if (!suites.empty()) cfg.suites = suites;
            if (*o_kmax) cfg.kmax = kmax;
            if (*o_tol) cfg.tolerance = tol;
            if (*o_seed) cfg.seed = seed;
            if (*o_samples) cfg.samples = samples;
            if (*o_theta) cfg.theta = hk::parse_theta(theta_text);
            if (*o_out) cfg.out = out;
            cfg.normalize();
            const auto checks = hk::run_verify(cfg);
            const nlohmann::json report = hk::verify_report(cfg, checks);
            emit(report, cfg.out);
            if (!report["passed"].get<bool>()) {
                std::cerr << "verify: check failed: " << report["first_failure"].get<std::string>() << '\n';
                return kNumerical;
            }
            return kOk;
        }
        if (*transgress) {
            if (order == 2 && structure.empty()) {
                std::cerr << "transgress: --structure is required for order 2\n";
                return kUsage;
            }
            hk::FormField target(0);
            try {
                target = hk::read_form(input);
            } catch (const std::exception& e) {
                std::cerr << "transgress: cannot read input: " << e.what() << '\n';
                return kUsage;
            }
            const double pre_tol = t_tol.value_or(hk::kDefaultPreconditionTol);
            const double max_residual = t_tol.value_or(order == 4 ? 1e-8 : 1e-9);
            std::optional<hk::TransgressionResult> solved;
            try {
                if (order == 1) solved = hk::transgress1(target, pre_tol);
                else if (order == 2) solved = hk::transgress2(parse_structure(structure), target, pre_tol);
                else solved = hk::transgress4(target, pre_tol);
            } catch (const hk::PreconditionError& e) {
                std::cerr << "transgress: precondition failed: " << e.what() << '\n';
                return kPrecondition;
            }
            const hk::TransgressionResult& r = *solved;
            emit(hk::transgression_report(r), t_out);
            if (r.residual > max_residual) {
                std::cerr << "transgress: reconstruction residual " << r.residual << " exceeds " << max_residual << '\n';
                return kNumerical;
            }
            return kOk;
        }
        if (*torsion) {
            hk::RunConfig cfg;
            cfg.theta = hk::parse_theta(tor_theta);
            cfg.normalize();
            const hk::TorsionReport r = hk::torsion_report(cfg.theta);
            emit(hk::torsion_report_json(r), tor_out);
            if (r.residual_T > 1e-8 || r.residual_T_h > 1e-8 || r.residual_beta0 > 1e-6) {
                std::cerr << "torsion: identity residuals exceed tolerance\n";
                return kNumerical;
            }
            return kOk;
        }
        if (*lapl) {
            try {
                emit(hk::lapl_report(hk::measure_lapl_constant(hk::default_lapl_modes(modes))), lapl_out);
            } catch (const hk::InconsistentConstant& e) {
                std::cerr << "lapl-constant: " << e.what() << '\n';
                return kNumerical;
            }
            return kOk;
        }
        if (*clifford) {
            emit(hk::clifford_report(), cl_out);
            return kOk;
        }
        if (*fixture) {
            hk::FormField f(fx_kmax);
            const hk::FormField seedfield = hk::random_field(fx_kmax, fx_seed, true);
            if (kind == "order1") f = hk::exterior_d(seedfield);
            else if (kind == "order2") {
                const hk::Structure c = parse_structure(fx_structure);
                f = hk::exterior_d(hk::twisted_d(c, seedfield));
            } else if (kind == "order4") f = hk::hyper_d(seedfield);
            else if (kind == "harmonic") f = hk::FormField::constant(fx_kmax, hk::Multivector::volume());
            else f = seedfield;
            hk::write_form(fx_out, f);
            return kOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
