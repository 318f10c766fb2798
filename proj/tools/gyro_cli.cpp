#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gyro/analysis.hpp"
#include "gyro/dynamics.hpp"
#include "gyro/validation.hpp"

namespace {

using namespace gyro;

// angles accept a "pi" suffix: "pi", "0.5pi", "-1.5pi", or plain radians
double parse_angle(std::string text) {
    auto strip = [](std::string& s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.pop_back();
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.erase(s.begin());
    };
    strip(text);
    double scale = 1.0;
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        scale = pi;
        text.erase(text.size() - 2);
        strip(text);
        if (text.empty() || text == "+") return scale;
        if (text == "-") return -scale;
    }
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size())
        throw std::invalid_argument("malformed angle: " + text);
    return value * scale;
}

struct Options {
    std::string topology = "braided-i";
    int n = -1, m = -1, nest = -1;
    double kappa = 1.0;
    double gamma_x = 0.1;
    double gamma_y = 0.1;
    double co = 0.1;
    double omega_rot = -1.0;  // default: 0.5 * gamma_x
    double tau = 0.1;
    double delta1 = 0.0, delta2 = 0.0;
    std::string phi = "pi";
    int phi_steps = 401;
    double r = 1.0;
    std::string theta = "0";
    unsigned seed = 12345;
    std::string out;
    std::string dump_config;

    SystemParams params() const {
        SystemParams p;
        p.kappa_a = p.kappa_b = kappa;
        p.gamma_x = gamma_x;
        p.gamma_y = gamma_y;
        p.omega_rot = omega_rot < 0.0 ? 0.5 * gamma_x : omega_rot;
        p.tau = tau;
        p.delta1 = delta1;
        p.delta2 = delta2;
        p.drive_phase_per_tau = parse_angle(phi);
        p.set_cooperativity(co);
        return p;
    }

    SystemLayout layout(const SystemParams& p) const {
        if (topology == "direct") return DirectCoupling{p.gamma};
        std::ostringstream record;
        record << topology;
        if (topology != "coincident") {
            if (n < 1) throw std::invalid_argument("--n is required for " + topology);
            if (m < 1) throw std::invalid_argument("--m is required for " + topology);
            record << " N=" << n << " M=" << m;
            if (topology.rfind("nested", 0) == 0) {
                if (nest < 1)
                    throw std::invalid_argument(
                        "--nest-index is required for nested");
                record << " nest=" << nest;
            }
        }
        return parse_topology(record.str());
    }

    DriveConfig drive() const {
        DriveConfig d;
        d.r = r;
        d.theta = parse_angle(theta);
        return d;
    }

    std::vector<double> phi_grid() const {
        if (phi_steps < 2)
            throw std::invalid_argument("--phi-steps must be at least 2");
        std::vector<double> g(phi_steps);
        for (int i = 0; i < phi_steps; ++i)
            g[i] = 2.0 * pi * i / (phi_steps - 1);
        return g;
    }
};

void register_globals(CLI::App* cmd, Options& opt) {
    cmd->fallthrough();
    cmd->add_option("--topology", opt.topology,
                    "separated-i|separated-ii|nested-i|nested-ii|braided-i|"
                    "braided-ii|coincident|direct");
    cmd->add_option("--n", opt.n, "coupling points of mode a");
    cmd->add_option("--m", opt.m, "coupling points of mode b");
    cmd->add_option("--nest-index", opt.nest, "nesting split for nested layouts");
    cmd->add_option("--kappa", opt.kappa, "port coupling kappa_a = kappa_b");
    cmd->add_option("--gamma-x", opt.gamma_x, "thermal decay of b_x");
    cmd->add_option("--gamma-y", opt.gamma_y, "thermal decay of b_y");
    cmd->add_option("--co", opt.co, "waveguide cooperativity");
    cmd->add_option("--omega-rot", opt.omega_rot, "angular velocity Omega");
    cmd->add_option("--tau", opt.tau, "nearest-neighbor delay");
    cmd->add_option("--delta1", opt.delta1, "detuning of mode a");
    cmd->add_option("--delta2", opt.delta2, "detuning of mode b");
    cmd->add_option("--phi", opt.phi, "drive phase per tau; accepts pi suffix");
    cmd->add_option("--phi-steps", opt.phi_steps, "grid points for phi sweeps");
    cmd->add_option("--r", opt.r, "probe amplitude ratio |beta/alpha|");
    cmd->add_option("--theta", opt.theta, "probe phase; accepts pi suffix");
    cmd->add_option("--seed", opt.seed, "seed for randomized validation sets");
    cmd->add_option("--out", opt.out, "output CSV path");
    cmd->add_option("--dump-config", opt.dump_config,
                    "write the effective configuration to this path")
        ->configurable(false);
}

std::string out_or(const Options& opt, const std::string& fallback) {
    return opt.out.empty() ? fallback : opt.out;
}

int run_sigma(const Options& opt) {
    SweepSpec spec;
    spec.variable = SweepVariable::Phi;
    spec.grid = opt.phi_grid();
    spec.params = opt.params();
    spec.params.validate();
    spec.layout = opt.layout(spec.params);
    spec.drive = opt.drive();
    spec.with_sensitivity = false;
    write_csv(sweep(spec), out_or(opt, "sigma.csv"));
    return 0;
}

FigureId parse_figure(std::string token) {
    for (auto& c : token) c = static_cast<char>(std::tolower(c));
    const std::pair<const char*, FigureId> table[] = {
        {"f3", FigureId::F3},   {"f4", FigureId::F4},   {"f5", FigureId::F5},
        {"f6", FigureId::F6},   {"f7", FigureId::F7},   {"f8", FigureId::F8},
        {"f9", FigureId::F9},   {"f10", FigureId::F10}, {"f11", FigureId::F11},
        {"f12", FigureId::F12},
    };
    for (const auto& [name, id] : table)
        if (token == name) return id;
    throw std::invalid_argument("unknown figure: " + token + " (f3..f12)");
}

std::string slug(std::string s) {
    for (auto& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-')
            c = '_';
    return s;
}

int write_figure(const std::string& token, const std::string& stem) {
    const auto curves = figure_data(parse_figure(token));
    for (const auto& curve : curves) {
        const std::string path = stem + "_" + slug(curve.label) + ".csv";
        write_csv(curve.data, path);
        std::cout << path << "\n";
    }
    return 0;
}

int run_snr(const Options& opt, const std::string& figure) {
    if (!figure.empty()) return write_figure(figure, out_or(opt, "snr"));
    SweepSpec spec;
    spec.variable = SweepVariable::Phi;
    spec.grid = opt.phi_grid();
    spec.params = opt.params();
    spec.params.validate();
    spec.layout = opt.layout(spec.params);
    spec.drive = opt.drive();
    spec.with_sensitivity = false;
    write_csv(sweep(spec), out_or(opt, "snr.csv"));
    return 0;
}

int run_sensitivity(const Options& opt, bool numeric, bool closed) {
    if (!numeric && !closed) numeric = true;
    const SystemParams base = opt.params();
    base.validate();
    const SystemLayout layout = opt.layout(base);
    const DriveConfig drive = opt.drive();
    const ClosedFormCase which =
        closed ? closed_form_case(layout) : ClosedFormCase::TraditionalSingle;

    CurveData data;
    data.columns = {"phi"};
    if (numeric) {
        data.columns.push_back("numeric_alpha");
        data.columns.push_back("numeric_beta");
    }
    if (closed) {
        data.columns.push_back("closed_alpha");
        data.columns.push_back("closed_beta");
    }
    if (numeric && closed) {
        data.columns.push_back("rel_err_alpha");
        data.columns.push_back("rel_err_beta");
    }
    std::ostringstream comment;
    comment << "kappa=" << base.kappa_a << " co=" << opt.co
            << " gamma_x=" << base.gamma_x << " gamma_y=" << base.gamma_y;
    data.comment = comment.str();

    const auto inf = std::numeric_limits<double>::infinity();
    for (double phi : opt.phi_grid()) {
        SystemParams p = base;
        p.drive_phase_per_tau = phi;
        std::vector<double> row = {phi};
        SensitivityPair num, cls;
        if (numeric) {
            num = sensitivity_numeric(p, layout, drive, 0.0);
            row.push_back(num.alpha_infinite ? inf : num.alpha);
            row.push_back(num.beta_infinite ? inf : num.beta);
        }
        if (closed) {
            cls = sensitivity_closed(p, which, phi, drive);
            row.push_back(cls.alpha_infinite ? inf : cls.alpha);
            row.push_back(cls.beta_infinite ? inf : cls.beta);
        }
        if (numeric && closed) {
            row.push_back(cls.alpha_infinite || num.alpha_infinite
                              ? 0.0
                              : std::abs(num.alpha - cls.alpha) / cls.alpha);
            row.push_back(cls.beta_infinite || num.beta_infinite
                              ? 0.0
                              : std::abs(num.beta - cls.beta) / cls.beta);
        }
        data.rows.push_back(std::move(row));
    }
    write_csv(data, out_or(opt, "sensitivity.csv"));
    return 0;
}

int run_compare(const Options& opt, const std::string& baseline) {
    ClosedFormCase base_case;
    if (baseline == "traditional-i")
        base_case = ClosedFormCase::TraditionalSingle;
    else if (baseline == "traditional-ii")
        base_case = ClosedFormCase::TraditionalDirect;
    else
        throw std::invalid_argument(
            "--baseline must be traditional-i or traditional-ii");

    const double phi = parse_angle(opt.phi);
    const DriveConfig drive = opt.drive();
    CurveData data;
    data.columns = {"cooperativity", "ratio_alpha_strict_i", "ratio_beta_strict_i",
                    "ratio_alpha_strict_ii", "ratio_beta_strict_ii"};
    std::ostringstream comment;
    comment << "closed-form sensitivity ratios vs " << baseline << " at phi="
            << phi;
    data.comment = comment.str();
    for (int k = 0; k < 50; ++k) {
        const double co = 0.01 + 0.01 * k;
        SystemParams p = reference_params(co);
        p.drive_phase_per_tau = phi;
        const auto base = sensitivity_closed(p, base_case, phi, drive);
        const auto s1 =
            sensitivity_closed(p, ClosedFormCase::StrictBraidedI, phi, drive);
        const auto s2 =
            sensitivity_closed(p, ClosedFormCase::StrictBraidedII, phi, drive);
        data.rows.push_back({co, s1.alpha / base.alpha, s1.beta / base.beta,
                             s2.alpha / base.alpha, s2.beta / base.beta});
    }
    write_csv(data, out_or(opt, "compare.csv"));
    return 0;
}

int run_dynamics(const Options& opt, double total_time, int steps_per_tau,
                 bool markovian, int stride) {
    const SystemParams p = opt.params();
    p.validate();
    const SystemLayout layout = opt.layout(p);
    const auto* topo = std::get_if<Topology>(&layout);
    if (!topo)
        throw std::invalid_argument(
            "dynamics integrates waveguide layouts only, not direct coupling");

    DdeConfig config;
    config.steps_per_tau = steps_per_tau;
    config.total_time = total_time > 0.0 ? total_time : 400.0 * p.tau;
    config.markovian = markovian;
    config.record_stride = stride;
    const Trajectory traj = integrate(p, *topo, config);

    CurveData data;
    data.columns = {"time",   "re_a",    "im_a",    "re_bx",   "im_bx", "re_by",
                    "im_by",  "re_aout", "im_aout", "re_bout", "im_bout"};
    std::ostringstream comment;
    comment << serialize(*topo) << " steps_per_tau=" << steps_per_tau
            << " markovian=" << markovian;
    data.comment = comment.str();
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const auto& x = traj.means[i];
        const auto& y = traj.outputs[i];
        data.rows.push_back({traj.times[i], x[0].real(), x[0].imag(), x[1].real(),
                             x[1].imag(), x[2].real(), x[2].imag(), y[0].real(),
                             y[0].imag(), y[1].real(), y[1].imag()});
    }
    write_csv(data, out_or(opt, "dynamics.csv"));

    const auto ss = steady_state(p, layout, 1.0, 0.0);
    const auto& tail = traj.means.back();
    const double scale = std::max({std::abs(ss[0]), std::abs(ss[1]), 1e-300});
    const double err =
        std::max(std::abs(tail[0] - ss[0]), std::abs(tail[1] - ss[1])) / scale;
    std::printf("steady state: dde (a, b_x) = (%.6g%+.6gi, %.6g%+.6gi), "
                "frequency domain = (%.6g%+.6gi, %.6g%+.6gi), rel err = %.3g\n",
                tail[0].real(), tail[0].imag(), tail[1].real(), tail[1].imag(),
                ss[0].real(), ss[0].imag(), ss[1].real(), ss[1].imag(), err);
    return 0;
}

int run_reciprocal_points(const Options& opt) {
    const SystemParams p = opt.params();
    const SystemLayout layout = opt.layout(p);
    const auto* topo = std::get_if<Topology>(&layout);
    if (!topo)
        throw std::invalid_argument(
            "reciprocal points are defined for waveguide layouts only");

    const ReciprocalPoints closed = reciprocal_points(*topo, RootMethod::Closed);
    const ReciprocalPoints numeric = reciprocal_points(*topo, RootMethod::Numeric);

    auto show = [](const char* label, const ReciprocalPoints& pts) {
        std::cout << label << ":";
        if (pts.identically_zero) {
            std::cout << " sigma identically zero\n";
            return;
        }
        if (pts.roots.empty()) {
            std::cout << " none\n";
            return;
        }
        for (double r : pts.roots) std::printf(" %.10gpi", r / pi);
        std::cout << "\n";
    };
    show("closed", closed);
    show("numeric", numeric);

    CurveData data;
    data.columns = {"phi", "phi_over_pi", "method"};  // method: 0 closed, 1 numeric
    data.comment = serialize(*topo);
    for (double r : closed.roots) data.rows.push_back({r, r / pi, 0.0});
    for (double r : numeric.roots) data.rows.push_back({r, r / pi, 1.0});
    write_csv(data, out_or(opt, "reciprocal_points.csv"));
    return 0;
}

int run_validate(const Options& opt, const std::string& check, double span) {
    // deliberately skips strict parameter validation so unphysical inputs
    // (e.g. injected gain) flow through and fail the physics checks instead
    const SystemParams p = opt.params();
    const auto results = checks::run_all(opt.seed, p, span, check);
    if (results.empty())
        throw std::invalid_argument("no check matches filter: " + check);

    bool all_pass = true;
    std::printf("%-22s %14s %14s  %s\n", "check", "residual", "tolerance",
                "status");
    for (const auto& r : results) {
        std::printf("%-22s %14.3e %14.3e  %s\n", r.name.c_str(), r.residual,
                    r.tolerance, r.pass ? "pass" : "FAIL");
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum gyroscope waveguide-coupling model"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a configuration file");

    Options opt;
    std::string figure, baseline = "traditional-i", check;
    bool numeric = false, closed = false, markovian = false;
    double total_time = 0.0, omega_span = 10.0;
    int steps_per_tau = 32, stride = 8;

    auto* sigma = app.add_subcommand("sigma", "nonreciprocal strength vs phi");
    register_globals(sigma, opt);

    auto* snr = app.add_subcommand("snr", "signal-to-noise ratio vs phi");
    register_globals(snr, opt);
    snr->add_option("--figure", figure, "emit survey figure data (f3..f12)");

    auto* sens = app.add_subcommand("sensitivity", "minimum detectable Omega^2");
    register_globals(sens, opt);
    sens->add_flag("--numeric", numeric, "finite-difference pipeline column");
    sens->add_flag("--closed", closed, "closed-form column");

    auto* compare = app.add_subcommand("compare",
                                       "sensitivity ratios against a baseline");
    register_globals(compare, opt);
    compare->add_option("--baseline", baseline,
                        "traditional-i or traditional-ii");

    auto* dynamics = app.add_subcommand("dynamics", "integrate the delayed "
                                                    "equations of motion");
    register_globals(dynamics, opt);
    dynamics->add_option("--total-time", total_time, "integration span");
    dynamics->add_option("--steps-per-tau", steps_per_tau, "steps per delay");
    dynamics->add_option("--record-stride", stride, "keep every k-th sample");
    dynamics->add_flag("--markovian", markovian, "drop the delays");

    auto* recip = app.add_subcommand("reciprocal-points",
                                     "phases where sigma(0) vanishes");
    register_globals(recip, opt);

    auto* figures = app.add_subcommand("figures", "survey figure data sets");
    register_globals(figures, opt);
    figures->add_option("--figure", figure, "f3..f12")->required();

    auto* validate = app.add_subcommand("validate", "model identity battery");
    register_globals(validate, opt);
    validate->add_option("--check", check, "substring filter on check names");
    validate->add_option("--omega-span", omega_span,
                         "frequency sweep half-width in units of kappa");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!opt.dump_config.empty()) {
            std::ofstream cfg(opt.dump_config);
            if (!cfg)
                throw std::invalid_argument("cannot open " + opt.dump_config);
            cfg << app.config_to_str(false, false);
        }
        if (sigma->parsed()) return run_sigma(opt);
        if (snr->parsed()) return run_snr(opt, figure);
        if (sens->parsed()) return run_sensitivity(opt, numeric, closed);
        if (compare->parsed()) return run_compare(opt, baseline);
        if (dynamics->parsed())
            return run_dynamics(opt, total_time, steps_per_tau, markovian, stride);
        if (recip->parsed()) return run_reciprocal_points(opt);
        if (figures->parsed()) return write_figure(figure, out_or(opt, "figure"));
        if (validate->parsed()) return run_validate(opt, check, omega_span);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedClosedFormError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
