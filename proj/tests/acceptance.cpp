// Release gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <vector>

#include "gyro/dynamics.hpp"
#include "gyro/validation.hpp"

using namespace gyro;

namespace {

int failures = 0;

void line(int id, const char* name, bool pass, const char* detail_fmt, ...) {
    char detail[256];
    va_list args;
    va_start(args, detail_fmt);
    std::vsnprintf(detail, sizeof detail, detail_fmt, args);
    va_end(args);
    std::printf("criterion %2d %-28s %s  (%s)\n", id, name,
                pass ? "PASS" : "FAIL", detail);
    if (!pass) ++failures;
}

void residual_line(int id, const char* name, double residual, double tol) {
    line(id, name, residual <= tol, "residual %.3e, tolerance %.1e", residual,
         tol);
}

bool contains_near(const std::vector<double>& roots, double target, double tol) {
    for (double r : roots)
        if (std::abs(r - target) <= tol) return true;
    return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main() {
    std::mt19937 rng(20240817);
    const auto t0 = std::chrono::steady_clock::now();

    residual_line(1, "coupling-matrix-oracle",
                  checks::oracle_equivalence_worst(8, 64), 1e-12);
    const double t1 = seconds_since(t0);
    if (t1 > 5.0)
        line(1, "coupling-matrix-budget", false, "%.1f s > 5 s", t1);

    residual_line(2, "passivity-identity", checks::passivity_worst(rng, 100),
                  1e-12);
    residual_line(3, "transfer-unitarity", checks::unitarity_worst(10.0, 201),
                  1e-10);
    residual_line(4, "sigma-closed-forms", checks::sigma_formula_worst(512),
                  1e-12);

    {
        const double tol = 2e-3 * pi;
        auto numeric = [](Topology t) {
            return reciprocal_points(t, RootMethod::Numeric).roots;
        };
        const auto strict2 = numeric({TopologyKind::Braided, Orientation::I, 2, 2});
        const auto strict3 = numeric({TopologyKind::Braided, Orientation::I, 3, 3});
        const auto general = numeric({TopologyKind::Braided, Orientation::I, 2, 3});
        const bool ok = contains_near(strict2, pi / 2.0, tol) &&
                        contains_near(strict2, 3.0 * pi / 2.0, tol) &&
                        contains_near(strict3, pi / 3.0, tol) &&
                        contains_near(strict3, pi / 3.0 + pi, tol) &&
                        contains_near(general, 0.41875 * pi, tol) &&
                        contains_near(general, pi, tol) &&
                        contains_near(general, 1.58125 * pi, tol);
        line(5, "reciprocal-point-roots", ok,
             "strict N=2: %zu roots, N=3: %zu, general (2,3): %zu",
             strict2.size(), strict3.size(), general.size());
    }

    residual_line(6, "snr-closed-vs-pipeline", checks::snr_closed_worst(101),
                  1e-6);

    {
        SystemParams p = reference_params(0.1);
        p.drive_phase_per_tau = pi;
        const Topology strict_i{TopologyKind::Braided, Orientation::I, 2, 2};
        const ResponseSet rs = response(p, strict_i, 0.0);
        const double r_beta =
            2.0 * std::norm(rs.g_matrix(1, 0) + rs.g_matrix(1, 1));
        const Topology coincident{TopologyKind::Coincident, Orientation::I, 1, 1};
        const ResponseSet rt = response(p, coincident, 0.0);
        const double t_alpha =
            2.0 * std::norm(rt.g_matrix(0, 0) + rt.g_matrix(0, 1));
        const double t_beta =
            2.0 * std::norm(rt.g_matrix(1, 0) + rt.g_matrix(1, 1));
        const bool ok = std::abs(r_beta - 1.6854) <= 1e-3 && r_beta > 1.0 &&
                        std::abs(t_alpha - 0.6062) <= 1e-3 && t_alpha < 1.0 &&
                        std::abs(t_beta - 0.1707) <= 1e-3 && t_beta < 1.0;
        line(7, "readability-at-phi-pi", ok,
             "R_beta = %.4f, traditional R = %.4f / %.4f", r_beta, t_alpha,
             t_beta);
    }

    {
        DriveConfig drive;
        SystemParams p01 = reference_params(0.1);
        auto ratio = [&](const SystemParams& p, ClosedFormCase num, int port,
                         ClosedFormCase den, int den_port) {
            const auto a = sensitivity_closed(p, num, pi, drive);
            const auto b = sensitivity_closed(p, den, pi, drive);
            const double x = port == 0 ? a.alpha : a.beta;
            const double y = den_port == 0 ? b.alpha : b.beta;
            return x / y;
        };
        const double r1 = ratio(p01, ClosedFormCase::StrictBraidedI, 0,
                                ClosedFormCase::TraditionalSingle, 0);
        const double r2 = ratio(p01, ClosedFormCase::StrictBraidedII, 0,
                                ClosedFormCase::TraditionalSingle, 0);
        SystemParams p05 = reference_params(0.5);
        const double r3 = ratio(p05, ClosedFormCase::StrictBraidedI, 1,
                                ClosedFormCase::TraditionalDirect, 1);
        const double r4 = ratio(p05, ClosedFormCase::StrictBraidedII, 0,
                                ClosedFormCase::TraditionalDirect, 0);
        const bool ok = std::abs(r1 - 0.6255) <= 1e-3 &&
                        std::abs(r1 - 0.62) <= 0.02 &&
                        std::abs(r2 - 0.2763) <= 1e-3 &&
                        std::abs(r2 - 0.28) <= 0.02 && r3 >= 0.2 && r3 <= 0.35 &&
                        r4 >= 0.2 && r4 <= 0.35;
        line(8, "sensitivity-ratios", ok,
             "%.4f, %.4f vs traditional-i; %.4f, %.4f vs traditional-ii", r1, r2,
             r3, r4);
    }

    residual_line(9, "sensitivity-finite-diff",
                  checks::sensitivity_agreement_worst(), 0.05);

    {
        const auto td0 = std::chrono::steady_clock::now();
        const checks::DdeDuality dd = checks::dde_duality_worst(rng, 32);
        const double dt = seconds_since(td0);
        line(10, "time-frequency-duality",
             dd.steady_rel <= 1e-6 && dd.order >= 3.5 && dt < 20.0,
             "steady rel %.3e, order %.2f, %.1f s", dd.steady_rel, dd.order, dt);
    }

    residual_line(11, "shot-noise-half", checks::shot_noise_worst(10.0, 201),
                  1e-10);

    std::printf("%s (%d criterion failures, %.1f s total)\n",
                failures == 0 ? "ACCEPTED" : "REJECTED", failures,
                seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
