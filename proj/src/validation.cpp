#include "gyro/validation.hpp"

#include <algorithm>
#include <cmath>

#include "gyro/dynamics.hpp"

namespace gyro::checks {

namespace {

std::vector<Topology> all_topologies(int max_points) {
    std::vector<Topology> topos;
    for (auto orient : {Orientation::I, Orientation::II}) {
        for (int n = 1; n <= max_points; ++n)
            for (int m = 1; m <= max_points; ++m) {
                topos.push_back({TopologyKind::Separated, orient, n, m});
                const int outer = orient == Orientation::I ? n : m;
                for (int nest = 1; nest <= outer - 1; ++nest)
                    topos.push_back({TopologyKind::Nested, orient, n, m, nest});
                const bool legal =
                    orient == Orientation::I ? (m >= n && (m == n || n >= 2))
                                             : (n >= m && (n == m || m >= 2));
                if (legal) topos.push_back({TopologyKind::Braided, orient, n, m});
            }
    }
    topos.push_back({TopologyKind::Coincident, Orientation::I, 1, 1});
    return topos;
}

}  // namespace

double oracle_equivalence_worst(int max_points, int phi_samples) {
    double worst = 0.0;
    const double gamma = 0.8;
    std::vector<double> phis;
    for (int i = 0; i < phi_samples; ++i)
        phis.push_back(2.0 * pi * i / (phi_samples - 1));
    // removable-singularity neighborhoods get explicit coverage
    for (double extra : {0.0, 1e-9, pi, pi + 1e-9, 2.0 * pi}) phis.push_back(extra);

    for (const Topology& topo : all_topologies(max_points)) {
        const double scale =
            gamma * std::pow(static_cast<double>(topo.n_a + topo.n_b), 2);
        for (double phi : phis) {
            const Mat2 closed = coupling_matrix_closed(topo, phi, gamma);
            const Mat2 brute = coupling_matrix_bruteforce(topo, phi, gamma);
            for (int k = 0; k < 4; ++k)
                worst = std::max(worst, std::abs(closed.v[k] - brute.v[k]) / scale);
        }
    }
    return worst;
}

std::vector<SystemLayout> representative_layouts() {
    return {
        Topology{TopologyKind::Separated, Orientation::I, 2, 3},
        Topology{TopologyKind::Separated, Orientation::II, 3, 2},
        Topology{TopologyKind::Nested, Orientation::I, 3, 2, 1},
        Topology{TopologyKind::Nested, Orientation::II, 2, 3, 1},
        Topology{TopologyKind::Braided, Orientation::I, 2, 2},
        Topology{TopologyKind::Braided, Orientation::I, 2, 4},
        Topology{TopologyKind::Braided, Orientation::II, 3, 2},
        Topology{TopologyKind::Coincident, Orientation::I, 1, 1},
        DirectCoupling{},  // g filled from gamma at evaluation time
    };
}

SystemParams random_params(std::mt19937& rng) {
    auto uni = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    SystemParams p;
    p.kappa_a = uni(0.2, 2.0);
    p.kappa_b = uni(0.2, 2.0);
    p.gamma = uni(0.0, 0.4);
    p.gamma_x = uni(0.02, 0.5);
    p.gamma_y = uni(0.02, 0.5);
    p.omega_rot = uni(0.0, 0.3);
    p.delta1 = uni(-1.0, 1.0);
    p.delta2 = uni(-1.0, 1.0);
    p.tau = uni(0.05, 0.5);
    p.drive_phase_per_tau = uni(0.0, 2.0 * pi);
    return p;
}

namespace {

SystemLayout with_direct_gain(const SystemLayout& layout, double gamma) {
    if (std::holds_alternative<DirectCoupling>(layout))
        return DirectCoupling{gamma};
    return layout;
}

}  // namespace

double passivity_worst(std::mt19937& rng, int sets_per_layout) {
    double worst = 0.0;
    for (const SystemLayout& layout : representative_layouts())
        for (int s = 0; s < sets_per_layout; ++s) {
            const SystemParams p = random_params(rng);
            const double omega =
                std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
            const ResponseSet rs =
                response(p, with_direct_gain(layout, p.gamma), omega);
            worst = std::max(worst, rs.passivity_residual /
                                        std::max(1.0, rs.a_matrix.max_abs()));
        }
    return worst;
}

namespace {

template <typename Fn>
void omega_sweep(double span, int points, Fn&& per_point) {
    for (double phid : {pi, 2.0}) {
        SystemParams p = reference_params(0.1);
        p.drive_phase_per_tau = phid;
        for (const SystemLayout& layout : representative_layouts()) {
            const SystemLayout lay = with_direct_gain(layout, p.gamma);
            for (int i = 0; i < points; ++i) {
                const double omega =
                    -span * p.kappa_a + 2.0 * span * p.kappa_a * i / (points - 1);
                per_point(response(p, lay, omega));
            }
        }
    }
}

}  // namespace

double unitarity_worst(double span, int points) {
    double worst = 0.0;
    omega_sweep(span, points, [&](const ResponseSet& rs) {
        worst = std::max(worst, rs.unitarity_residual);
    });
    return worst;
}

double shot_noise_worst(double span, int points) {
    double worst = 0.0;
    omega_sweep(span, points, [&](const ResponseSet& rs) {
        for (int r = 0; r < 2; ++r) {
            double acc = 0.0;
            for (int j = 0; j < 5; ++j) acc += std::norm(rs.g_matrix(r, j));
            worst = std::max(worst, std::abs(0.5 * acc - 0.5));
        }
    });
    return worst;
}

double sigma_consistency_worst(int phi_samples) {
    double worst = 0.0;
    SystemParams p = reference_params(0.1);
    const std::vector<Topology> pairs_i = {
        {TopologyKind::Separated, Orientation::I, 2, 3},
        {TopologyKind::Nested, Orientation::I, 3, 2, 1},
        {TopologyKind::Braided, Orientation::I, 2, 2},
        {TopologyKind::Braided, Orientation::I, 2, 3},
        {TopologyKind::Coincident, Orientation::I, 1, 1},
    };
    for (const Topology& t1 : pairs_i) {
        Topology t2 = t1;  // mirror image: orientation II with N and M swapped
        if (t1.kind != TopologyKind::Coincident) {
            t2.orientation = Orientation::II;
            std::swap(t2.n_a, t2.n_b);
        }
        for (int i = 0; i < phi_samples; ++i) {
            p.drive_phase_per_tau = 2.0 * pi * i / (phi_samples - 1);
            // nonreciprocal_strength itself asserts the A/G agreement
            const double s1 = nonreciprocal_strength(p, t1, 0.0);
            const double s2 = nonreciprocal_strength(p, t2, 0.0);
            worst = std::max(worst, std::abs(s1 + s2));
        }
    }
    return worst;
}

double sigma_formula_worst(int phi_samples) {
    double worst = 0.0;
    SystemParams p = reference_params(0.1);
    const Topology strict_i{TopologyKind::Braided, Orientation::I, 2, 2};
    const Topology strict_ii{TopologyKind::Braided, Orientation::II, 2, 2};
    const Topology sep_i{TopologyKind::Separated, Orientation::I, 2, 3};
    const Topology sep_ii{TopologyKind::Separated, Orientation::II, 3, 2};
    const Topology nested{TopologyKind::Nested, Orientation::I, 2, 2, 1};
    for (int i = 0; i < phi_samples; ++i) {
        const double phi = 2.0 * pi * i / (phi_samples - 1);
        p.drive_phase_per_tau = phi;
        const double expected =
            (2.0 + 2.0 * std::cos(2.0 * phi)) / (3.0 + 2.0 * std::cos(2.0 * phi));
        worst = std::max(worst,
                         std::abs(nonreciprocal_strength(p, strict_i, 0.0) - expected));
        worst = std::max(worst,
                         std::abs(nonreciprocal_strength(p, strict_ii, 0.0) + expected));
        worst = std::max(worst, std::abs(nonreciprocal_strength(p, sep_i, 0.0) - 1.0));
        worst = std::max(worst, std::abs(nonreciprocal_strength(p, sep_ii, 0.0) + 1.0));
        worst = std::max(worst, std::abs(nonreciprocal_strength(p, nested, 0.0)));
    }
    return worst;
}

double explicit_transfer_worst(std::mt19937& rng, int sets) {
    double worst = 0.0;
    for (const SystemLayout& layout : representative_layouts()) {
        const auto* topo = std::get_if<Topology>(&layout);
        if (!topo) continue;  // the element formulas are topology-specific
        for (int s = 0; s < sets; ++s) {
            const SystemParams p = random_params(rng);
            const double omega =
                std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
            const Mat25 inv = response(p, *topo, omega).g_matrix;
            const Mat25 exp = transfer_elements_explicit(p, *topo, omega);
            double scale = 1.0;
            for (int k = 0; k < 10; ++k) scale = std::max(scale, std::abs(inv.v[k]));
            for (int k = 0; k < 10; ++k)
                worst = std::max(worst, std::abs(inv.v[k] - exp.v[k]) / scale);
        }
    }
    return worst;
}

namespace {

SystemLayout layout_for(ClosedFormCase which, double gamma) {
    switch (which) {
        case ClosedFormCase::StrictBraidedI:
            return Topology{TopologyKind::Braided, Orientation::I, 2, 2};
        case ClosedFormCase::StrictBraidedII:
            return Topology{TopologyKind::Braided, Orientation::II, 2, 2};
        case ClosedFormCase::GeneralBraidedI:
            return Topology{TopologyKind::Braided, Orientation::I, 2, 3};
        case ClosedFormCase::GeneralBraidedII:
            return Topology{TopologyKind::Braided, Orientation::II, 3, 2};
        case ClosedFormCase::TraditionalSingle:
            return Topology{TopologyKind::Coincident, Orientation::I, 1, 1};
        case ClosedFormCase::TraditionalDirect:
            return DirectCoupling{gamma};
    }
    throw std::logic_error("unreachable");
}

constexpr ClosedFormCase kAllCases[] = {
    ClosedFormCase::StrictBraidedI,   ClosedFormCase::StrictBraidedII,
    ClosedFormCase::GeneralBraidedI,  ClosedFormCase::GeneralBraidedII,
    ClosedFormCase::TraditionalSingle, ClosedFormCase::TraditionalDirect,
};

}  // namespace

double snr_closed_worst(int phi_samples) {
    double worst = 0.0;
    for (double co : {0.01, 0.05, 0.1, 0.5}) {
        SystemParams p = reference_params(co);
        for (ClosedFormCase which : kAllCases) {
            const SystemLayout layout = layout_for(which, p.gamma);
            for (int i = 0; i < phi_samples; ++i) {
                const double phi = 2.0 * pi * i / (phi_samples - 1);
                p.drive_phase_per_tau = phi;
                const ResponseSet rs = response(p, layout, 0.0);
                const double pipe_a =
                    2.0 * std::norm(rs.g_matrix(0, 0) + rs.g_matrix(0, 1));
                const double pipe_b =
                    2.0 * std::norm(rs.g_matrix(1, 0) + rs.g_matrix(1, 1));
                const auto [ra, rb] = snr_closed(p, which, phi);
                worst = std::max(worst,
                                 std::abs(ra - pipe_a) / std::max(pipe_a, 1e-12));
                worst = std::max(worst,
                                 std::abs(rb - pipe_b) / std::max(pipe_b, 1e-12));
            }
        }
    }
    return worst;
}

double sensitivity_agreement_worst() {
    double worst = 0.0;
    DriveConfig drive;
    for (double co : {0.01, 0.05, 0.1}) {
        SystemParams p;
        p.kappa_a = p.kappa_b = 1.0;
        p.gamma_x = p.gamma_y = 1e-3;  // kappa = 10^3 gamma_x regime
        p.tau = 0.1;
        p.set_cooperativity(co);
        for (ClosedFormCase which : kAllCases) {
            const SystemLayout layout = layout_for(which, p.gamma);
            for (int i = 0; i < 24; ++i) {
                const double phi = 2.0 * pi * (i + 0.5) / 24.0;
                p.drive_phase_per_tau = phi;
                const SensitivityPair closed =
                    sensitivity_closed(p, which, phi, drive);
                if (closed.alpha_infinite || closed.beta_infinite) continue;
                // skip the neighborhoods of the sensitivity poles, where the
                // leading-order forms themselves blow up
                const double cap = 50.0 * p.gamma_y * p.kappa_a / 16.0;
                const SensitivityPair numeric =
                    sensitivity_numeric(p, layout, drive, 0.0);
                if (closed.alpha < cap && !numeric.alpha_infinite)
                    worst = std::max(worst, std::abs(numeric.alpha - closed.alpha) /
                                                closed.alpha);
                if (closed.beta < cap && !numeric.beta_infinite)
                    worst = std::max(worst,
                                     std::abs(numeric.beta - closed.beta) / closed.beta);
            }
        }
    }
    return worst;
}

double reciprocal_sets_worst(int max_points) {
    auto set_distance = [](const ReciprocalPoints& a, const ReciprocalPoints& b) {
        if (a.identically_zero != b.identically_zero) return 1e9;
        if (a.roots.size() != b.roots.size()) return 1e9;
        double d = 0.0;
        for (size_t i = 0; i < a.roots.size(); ++i)
            d = std::max(d, std::abs(a.roots[i] - b.roots[i]));
        return d;
    };

    double worst = 0.0;
    std::vector<Topology> cases;
    for (int n = 1; n <= max_points; ++n)
        cases.push_back({TopologyKind::Braided, Orientation::I, n, n});
    for (int outer = 2; outer <= max_points; ++outer)
        for (int inner = 1; inner < outer; ++inner)
            for (int m : {1, 2, 3}) {
                cases.push_back({TopologyKind::Nested, Orientation::I, outer, m,
                                 inner});
                cases.push_back({TopologyKind::Nested, Orientation::II, m, outer,
                                 inner});
            }
    for (const Topology& topo : cases)
        worst = std::max(worst,
                         set_distance(reciprocal_points(topo, RootMethod::Closed),
                                      reciprocal_points(topo, RootMethod::Numeric)));
    return worst;
}

DdeDuality dde_duality_worst(std::mt19937& rng, int steps_per_tau) {
    auto uni = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto draw = [&]() {
        SystemParams p;
        p.kappa_a = uni(0.5, 1.5);
        p.kappa_b = uni(0.5, 1.5);
        p.gamma = uni(0.1, 0.3);
        p.gamma_x = uni(0.05, 0.2);
        p.gamma_y = uni(0.05, 0.2);
        p.omega_rot = uni(0.0, 0.2);
        p.delta1 = uni(-0.3, 0.3);
        p.delta2 = uni(-0.3, 0.3);
        p.tau = uni(0.1, 0.3);
        p.drive_phase_per_tau = uni(0.0, 2.0 * pi);
        return p;
    };

    const std::vector<Topology> kinds = {
        {TopologyKind::Separated, Orientation::I, 2, 2},
        {TopologyKind::Nested, Orientation::I, 2, 2, 1},
        {TopologyKind::Braided, Orientation::I, 2, 2},
        {TopologyKind::Braided, Orientation::II, 3, 2},
        {TopologyKind::Coincident, Orientation::I, 1, 1},
    };

    DdeDuality out;
    out.order = 1e9;
    DdeConfig config;
    config.steps_per_tau = steps_per_tau;
    config.drive_alpha = {1.0, 0.0};
    config.drive_beta = {0.4, 0.3};

    for (const Topology& topo : kinds) {
        const SystemParams p = draw();
        config.total_time = 60.0 / std::min(p.kappa_a, p.gamma_x);
        config.record_stride = 1 << 20;  // only the endpoints matter here
        const Trajectory traj = integrate(p, topo, config);
        const auto tail = traj.means.back();
        const auto ss = steady_state(p, topo, config.drive_alpha, config.drive_beta);
        const double scale = std::max(std::abs(ss[0]), std::abs(ss[1]));
        const double err = std::max(std::abs(tail[0] - ss[0]),
                                    std::abs(tail[1] - ss[1]));
        out.steady_rel = std::max(out.steady_rel, err / scale);
    }

    // observed convergence order from step halving against a mid-transient state
    {
        const Topology topo{TopologyKind::Braided, Orientation::I, 2, 2};
        SystemParams p = draw();
        p.tau = 0.25;
        DdeConfig c;
        c.total_time = 12.0;
        c.drive_alpha = {1.0, 0.0};
        c.drive_beta = {0.5, 0.2};
        c.record_stride = 1 << 20;
        std::array<std::array<cplx, 3>, 3> tails;
        int idx = 0;
        for (int k : {8, 16, 32}) {
            c.steps_per_tau = k;
            tails[idx++] = integrate(p, topo, c).means.back();
        }
        double e1 = 0.0, e2 = 0.0;
        for (int m = 0; m < 3; ++m) {
            e1 += std::norm(tails[0][m] - tails[1][m]);
            e2 += std::norm(tails[1][m] - tails[2][m]);
        }
        out.order = std::log2(std::sqrt(e1 / e2));
    }
    return out;
}

std::vector<CheckResult> run_all(unsigned seed, const SystemParams& base_params,
                                 double omega_span, const std::string& filter) {
    std::mt19937 rng(seed);
    std::vector<CheckResult> results;
    auto add = [&](const std::string& name, double residual, double tol) {
        if (!filter.empty() && name.find(filter) == std::string::npos) return;
        results.push_back({name, residual, tol, residual <= tol});
    };
    auto wants = [&](const std::string& group) {
        // run the group when the filter names it or one of its checks
        return filter.empty() || group.find(filter) != std::string::npos ||
               filter.find(group) != std::string::npos;
    };

    if (wants("oracle")) add("oracle-equivalence", oracle_equivalence_worst(), 1e-12);
    if (wants("passivity")) {
        add("passivity-random", passivity_worst(rng), 1e-12);
        // probes the caller-supplied parameter set, e.g. injected gain
        const ResponseSet rs = response(
            base_params, Topology{TopologyKind::Braided, Orientation::I, 2, 2}, 0.0);
        add("passivity-config",
            rs.passivity_residual / std::max(1.0, rs.a_matrix.max_abs()), 1e-12);
    }
    if (wants("unitarity")) add("unitarity", unitarity_worst(omega_span), 1e-10);
    if (wants("shot-noise")) add("shot-noise", shot_noise_worst(omega_span), 1e-10);
    if (wants("sigma")) {
        add("sigma-consistency", sigma_consistency_worst(), 1e-10);
        add("sigma-formula", sigma_formula_worst(), 1e-12);
    }
    if (wants("transfer")) add("transfer-explicit", explicit_transfer_worst(rng), 1e-12);
    if (wants("snr")) add("snr-closed", snr_closed_worst(), 1e-6);
    if (wants("sensitivity"))
        add("sensitivity-closed", sensitivity_agreement_worst(), 0.05);
    if (wants("reciprocal"))
        add("reciprocal-sets", reciprocal_sets_worst(), 1e-6);
    if (wants("dde")) {
        const DdeDuality dd = dde_duality_worst(rng);
        add("dde-steady-state", dd.steady_rel, 1e-6);
        add("dde-order", 4.5 - dd.order, 1.0);  // order >= 3.5
    }
    return results;
}

}  // namespace gyro::checks
