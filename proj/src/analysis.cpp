#include "gyro/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace gyro {

void SweepSpec::validate() const {
    if (grid.size() < 2)
        throw std::invalid_argument("sweep: grid needs at least 2 points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw std::invalid_argument("sweep: grid must be strictly increasing");
    if (variable == SweepVariable::Phi &&
        (grid.front() < 0.0 || grid.back() > 2.0 * pi + 1e-12))
        throw std::invalid_argument("sweep: phi grid must lie in [0, 2 pi]");
    if (variable == SweepVariable::Cooperativity && grid.front() <= 0.0)
        throw std::invalid_argument("sweep: cooperativity grid must be positive");
    params.validate();
}

namespace {

std::string describe(const SweepSpec& spec) {
    std::ostringstream out;
    out << "kappa_a=" << spec.params.kappa_a << " kappa_b=" << spec.params.kappa_b
        << " gamma=" << spec.params.gamma << " gamma_x=" << spec.params.gamma_x
        << " gamma_y=" << spec.params.gamma_y << " omega_rot=" << spec.params.omega_rot
        << " delta1=" << spec.params.delta1 << " delta2=" << spec.params.delta2
        << " tau=" << spec.params.tau
        << " drive_phase_per_tau=" << spec.params.drive_phase_per_tau
        << " r=" << spec.drive.r << " theta=" << spec.drive.theta << " layout=";
    if (const auto* topo = std::get_if<Topology>(&spec.layout))
        out << serialize(*topo);
    else
        out << "direct g=" << std::get<DirectCoupling>(spec.layout).g;
    return out.str();
}

std::vector<double> evaluate_point(const SweepSpec& spec, double x) {
    SystemParams params = spec.params;
    SystemLayout layout = spec.layout;
    double omega = 0.0;
    switch (spec.variable) {
        case SweepVariable::Phi:
            params.drive_phase_per_tau = x;
            break;
        case SweepVariable::Omega:
            omega = x;
            break;
        case SweepVariable::Cooperativity:
            params.set_cooperativity(x);
            if (auto* direct = std::get_if<DirectCoupling>(&layout))
                direct->g = params.gamma;
            break;
    }

    const ResponseSet rs = response(params, layout, omega);
    const double up = std::norm(rs.a_matrix(1, 0));
    const double down = std::norm(rs.a_matrix(0, 1));
    const double sigma = up + down > 0.0
                             ? (up - down) / (up + down)
                             : std::numeric_limits<double>::quiet_NaN();

    const cplx ratio = spec.drive.r * expi(spec.drive.theta);
    const double snr_a = 2.0 * std::norm(rs.g_matrix(0, 0) + ratio * rs.g_matrix(0, 1));
    const double snr_b = 2.0 * std::norm(rs.g_matrix(1, 0) + ratio * rs.g_matrix(1, 1));

    double sens_a = std::numeric_limits<double>::quiet_NaN();
    double sens_b = std::numeric_limits<double>::quiet_NaN();
    if (spec.with_sensitivity) {
        const SensitivityPair sens =
            sensitivity_numeric(params, layout, spec.drive, omega);
        sens_a = sens.alpha_infinite ? std::numeric_limits<double>::infinity()
                                     : sens.alpha;
        sens_b = sens.beta_infinite ? std::numeric_limits<double>::infinity()
                                    : sens.beta;
    }
    return {x, sigma, snr_a, snr_b, sens_a, sens_b, rs.passivity_residual,
            rs.unitarity_residual};
}

}  // namespace

CurveData sweep(const SweepSpec& spec, ExecutionPolicy policy) {
    spec.validate();
    const char* names[] = {"phi", "omega", "cooperativity"};
    CurveData data;
    data.columns = {names[static_cast<int>(spec.variable)],
                    "sigma",
                    "snr_alpha",
                    "snr_beta",
                    "sens_alpha",
                    "sens_beta",
                    "passivity_residual",
                    "unitarity_residual"};
    data.comment = describe(spec);
    data.rows.resize(spec.grid.size());

    std::string first_error;
    const auto n = static_cast<long>(spec.grid.size());
    if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) {
            try {
                data.rows[i] = evaluate_point(spec, spec.grid[i]);
            } catch (const std::exception& e) {
#pragma omp critical
                if (first_error.empty())
                    first_error = "sweep failed at grid value " +
                                  std::to_string(spec.grid[i]) + ": " + e.what();
            }
        }
    } else {
        for (long i = 0; i < n; ++i) {
            try {
                data.rows[i] = evaluate_point(spec, spec.grid[i]);
            } catch (const std::exception& e) {
                throw std::runtime_error("sweep failed at grid value " +
                                         std::to_string(spec.grid[i]) + ": " +
                                         e.what());
            }
        }
    }
    if (!first_error.empty()) throw std::runtime_error(first_error);
    return data;
}

namespace {

// sigma(0) as a function of the drive phase, from the coupling off-diagonals;
// nudges past isolated points where both off-diagonals vanish exactly
double sigma_at(const Topology& topo, double phi) {
    for (int attempt = 0; attempt < 3; ++attempt) {
        const Mat2 m = coupling_matrix_bruteforce(topo, phi, 1.0);
        const double up = std::norm(m(1, 0)), down = std::norm(m(0, 1));
        if (up + down > 1e-24) return (up - down) / (up + down);
        phi += 1e-9;
    }
    return 0.0;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// golden-section minimization of |f| for tangential (even-order) zeros
double minimize_abs(const std::function<double(double)>& f, double lo, double hi,
                    double tol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = std::abs(f(c)), fd = std::abs(f(d));
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = std::abs(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = std::abs(f(d));
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> scan_roots(const std::function<double(double)>& f,
                               bool* identically_zero) {
    constexpr int kSamples = 10000;
    std::vector<double> phis(kSamples - 1), vals(kSamples - 1);
    double max_abs = 0.0;
    for (int i = 1; i < kSamples; ++i) {
        phis[i - 1] = 2.0 * pi * i / kSamples;
        vals[i - 1] = f(phis[i - 1]);
        max_abs = std::max(max_abs, std::abs(vals[i - 1]));
    }
    if (identically_zero) *identically_zero = max_abs < 1e-8;
    if (identically_zero && *identically_zero) return {};

    std::vector<double> roots;
    for (size_t i = 0; i + 1 < vals.size(); ++i) {
        if (vals[i] == 0.0) {
            roots.push_back(phis[i]);
        } else if ((vals[i] < 0.0) != (vals[i + 1] < 0.0)) {
            roots.push_back(bisect(f, phis[i], phis[i + 1], 1e-10));
        }
    }
    // tangential zeros: local minima of |f| dipping below threshold
    for (size_t i = 1; i + 1 < vals.size(); ++i) {
        const double a0 = std::abs(vals[i - 1]), a1 = std::abs(vals[i]),
                     a2 = std::abs(vals[i + 1]);
        if (a1 <= a0 && a1 <= a2 && a1 < 1e-6) {
            const double phi = minimize_abs(f, phis[i - 1], phis[i + 1], 1e-12);
            if (std::abs(f(phi)) < 1e-8) roots.push_back(phi);
        }
    }
    // near tangential zeros rounding noise can spawn sign-change candidates a
    // few 1e-6 away from the true root; cluster candidates well below the
    // narrowest genuine root spacing and keep the best within each cluster
    std::sort(roots.begin(), roots.end());
    std::vector<double> dedup;
    for (double r : roots) {
        if (dedup.empty() || r - dedup.back() > 1e-4)
            dedup.push_back(r);
        else if (std::abs(f(r)) < std::abs(f(dedup.back())))
            dedup.back() = r;
    }
    return dedup;
}

ReciprocalPoints closed_points(const Topology& topo) {
    ReciprocalPoints out;
    switch (topo.kind) {
        case TopologyKind::Separated:
            return out;  // sigma is identically +-1, no roots
        case TopologyKind::Coincident:
            out.identically_zero = true;
            return out;
        case TopologyKind::Nested: {
            const int outer =
                topo.orientation == Orientation::I ? topo.n_a : topo.n_b;
            const int inner = *topo.nest_index;
            const int q = std::abs(outer - 2 * inner);
            if (q == 0) {
                out.identically_zero = true;
                return out;
            }
            // sin^2(n phi/2) = sin^2((P-n) phi/2), i.e.
            // sin(P phi/2) sin((P-2n) phi/2) = 0
            for (int k = 1; k < outer; ++k)
                out.roots.push_back(2.0 * pi * k / outer);
            for (int k = 1; k < q; ++k) out.roots.push_back(2.0 * pi * k / q);
            break;
        }
        case TopologyKind::Braided: {
            if (topo.strict_braided()) {
                // sin(N phi) = 0 away from the sigma maxima at sin(phi) = 0
                const int N = topo.n_a;
                for (int k = 1; k < 2 * N; ++k)
                    if (k != N) out.roots.push_back(pi * k / N);
            } else {
                // transcendental reciprocity condition of the mixed topology
                const int N = topo.orientation == Orientation::I ? topo.n_a
                                                                 : topo.n_b;
                const int M = topo.orientation == Orientation::I ? topo.n_b
                                                                 : topo.n_a;
                auto condition = [N, M](double phi) {
                    return N * std::sin(phi) *
                               (std::cos((N - 1) * phi) + std::cos(N * phi) -
                                std::cos(M * phi) - std::cos((M + 1) * phi)) +
                           std::sin(N * phi) *
                               (1.0 + std::cos(phi) - std::cos((M - N) * phi) -
                                std::cos((M - N + 1) * phi));
                };
                out.roots = scan_roots(condition, nullptr);
            }
            break;
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end(),
                                [](double a, double b) { return b - a < 1e-9; }),
                    out.roots.end());
    return out;
}

}  // namespace

ReciprocalPoints reciprocal_points(const Topology& topo, RootMethod method) {
    topo.validate();
    if (method == RootMethod::Closed) return closed_points(topo);

    if (topo.kind == TopologyKind::Separated)
        return {};  // unidirectional, sigma never crosses zero

    ReciprocalPoints out;
    out.roots = scan_roots([&](double phi) { return sigma_at(topo, phi); },
                           &out.identically_zero);
    return out;
}

SystemParams reference_params(double co) {
    SystemParams p;
    p.kappa_a = p.kappa_b = 1.0;
    p.gamma_x = p.gamma_y = 0.1;
    p.omega_rot = 0.05;
    p.tau = 0.1;
    p.drive_phase_per_tau = pi;
    p.set_cooperativity(co);
    return p;
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

SweepSpec phi_spec(const SystemLayout& layout, double co, bool sensitivity) {
    SweepSpec spec;
    spec.variable = SweepVariable::Phi;
    spec.grid = linspace(0.0, 2.0 * pi, 401);
    spec.params = reference_params(co);
    spec.layout = layout;
    spec.with_sensitivity = sensitivity;
    return spec;
}

Topology braided(Orientation o, int n, int m) {
    return {TopologyKind::Braided, o, n, m};
}

// closed-form sensitivity ratio table: strict braided over a baseline
CurveData ratio_table(ClosedFormCase baseline, const std::vector<double>& cos_) {
    CurveData data;
    data.columns = {"cooperativity", "ratio_alpha_strict_i", "ratio_beta_strict_i",
                    "ratio_alpha_strict_ii", "ratio_beta_strict_ii"};
    data.comment = "phi=pi reference scenario, closed-form sensitivities";
    DriveConfig drive;
    for (double co : cos_) {
        SystemParams p = reference_params(co);
        const auto base = sensitivity_closed(p, baseline, pi, drive);
        const auto s1 = sensitivity_closed(p, ClosedFormCase::StrictBraidedI, pi, drive);
        const auto s2 =
            sensitivity_closed(p, ClosedFormCase::StrictBraidedII, pi, drive);
        data.rows.push_back({co, s1.alpha / base.alpha, s1.beta / base.beta,
                             s2.alpha / base.alpha, s2.beta / base.beta});
    }
    return data;
}

CurveData snr_vs_cooperativity(const SystemLayout& layout,
                               const std::vector<double>& cos_) {
    SweepSpec spec;
    spec.variable = SweepVariable::Cooperativity;
    spec.grid = cos_;
    spec.params = reference_params(cos_.front());
    spec.layout = layout;
    spec.with_sensitivity = false;
    return sweep(spec);
}

}  // namespace

std::vector<NamedCurve> figure_data(FigureId id) {
    std::vector<NamedCurve> out;
    const std::vector<double> co_panels = {0.01, 0.05, 0.1};
    const std::vector<double> co_grid = linspace(0.01, 0.5, 50);

    auto add_phi = [&](const std::string& label, const SystemLayout& layout,
                       double co, bool sens) {
        out.push_back({label, sweep(phi_spec(layout, co, sens))});
    };

    switch (id) {
        case FigureId::F3:
            add_phi("sigma braided-i", braided(Orientation::I, 2, 2), 0.1, false);
            add_phi("sigma braided-ii", braided(Orientation::II, 2, 2), 0.1, false);
            break;
        case FigureId::F4:
            for (double co : co_panels) {
                add_phi("snr braided-i co=" + std::to_string(co),
                        braided(Orientation::I, 2, 2), co, false);
                add_phi("snr braided-ii co=" + std::to_string(co),
                        braided(Orientation::II, 2, 2), co, false);
            }
            break;
        case FigureId::F5:
            out.push_back({"sens-ratio vs co strict",
                           ratio_table(ClosedFormCase::StrictBraidedI, co_grid)});
            for (double co : co_panels)
                add_phi("sens braided-i co=" + std::to_string(co),
                        braided(Orientation::I, 2, 2), co, true);
            break;
        case FigureId::F6: {
            const Topology coincident{TopologyKind::Coincident, Orientation::I, 1, 1};
            out.push_back(
                {"snr traditional-i pipeline", snr_vs_cooperativity(coincident, co_grid)});
            CurveData closed;
            closed.columns = {"cooperativity", "snr_alpha", "snr_beta"};
            closed.comment = "traditional single-point closed forms";
            for (double co : co_grid) {
                const auto [ra, rb] = snr_closed(reference_params(co),
                                                 ClosedFormCase::TraditionalSingle, 0.0);
                closed.rows.push_back({co, ra, rb});
            }
            out.push_back({"snr traditional-i closed", closed});
            break;
        }
        case FigureId::F7:
            for (double co : co_panels)
                add_phi("sens-ratio braided-i co=" + std::to_string(co),
                        braided(Orientation::I, 2, 2), co, true);
            out.push_back({"vs traditional-i",
                           ratio_table(ClosedFormCase::TraditionalSingle, co_grid)});
            break;
        case FigureId::F8: {
            SystemParams p = reference_params(0.1);
            out.push_back({"snr traditional-ii pipeline",
                           snr_vs_cooperativity(DirectCoupling{p.gamma}, co_grid)});
            break;
        }
        case FigureId::F9:
            out.push_back({"vs traditional-ii",
                           ratio_table(ClosedFormCase::TraditionalDirect, co_grid)});
            break;
        case FigureId::F10:
            add_phi("sigma general-i", braided(Orientation::I, 2, 3), 0.1, false);
            add_phi("sigma general-ii", braided(Orientation::II, 3, 2), 0.1, false);
            break;
        case FigureId::F11:
            for (double co : co_panels) {
                add_phi("snr general-i co=" + std::to_string(co),
                        braided(Orientation::I, 2, 3), co, false);
                add_phi("snr general-ii co=" + std::to_string(co),
                        braided(Orientation::II, 3, 2), co, false);
            }
            break;
        case FigureId::F12:
            for (double co : co_panels) {
                add_phi("sens-ratio general-i co=" + std::to_string(co),
                        braided(Orientation::I, 2, 3), co, true);
                add_phi("sens-ratio general-ii co=" + std::to_string(co),
                        braided(Orientation::II, 3, 2), co, true);
            }
            break;
    }
    return out;
}

void write_csv(const CurveData& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    if (!data.comment.empty()) out << "# " << data.comment << "\n";
    for (size_t i = 0; i < data.columns.size(); ++i)
        out << (i ? "," : "") << data.columns[i];
    out << "\n";
    char buf[64];
    for (const auto& row : data.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
}

}  // namespace gyro
