#include <random>

#include "doctest.h"
#include "gyro/dynamics.hpp"
#include "gyro/validation.hpp"

using namespace gyro;

namespace {

SystemParams stiff_free() {
    SystemParams p;
    p.kappa_a = 1.0;
    p.kappa_b = 0.8;
    p.gamma = 0.2;
    p.gamma_x = 0.15;
    p.gamma_y = 0.1;
    p.omega_rot = 0.1;
    p.tau = 0.25;
    p.drive_phase_per_tau = 2.1;
    return p;
}

}  // namespace

TEST_CASE("configuration validation") {
    DdeConfig c;
    c.total_time = 10.0;
    CHECK_NOTHROW(c.validate());
    c.steps_per_tau = 4;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.steps_per_tau = 32;
    c.total_time = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.total_time = 10.0;
    c.record_stride = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("tail converges to the frequency-domain steady state") {
    const SystemParams p = stiff_free();
    const Topology topo{TopologyKind::Braided, Orientation::I, 2, 3};
    DdeConfig c;
    c.total_time = 60.0 / p.gamma_x;
    c.steps_per_tau = 32;
    c.drive_alpha = {1.0, 0.0};
    c.drive_beta = {0.3, -0.2};
    c.record_stride = 1 << 20;
    const Trajectory traj = integrate(p, topo, c);
    const auto ss = steady_state(p, topo, c.drive_alpha, c.drive_beta);
    const double scale = std::max(std::abs(ss[0]), std::abs(ss[1]));
    CHECK(std::abs(traj.means.back()[0] - ss[0]) / scale < 1e-6);
    CHECK(std::abs(traj.means.back()[1] - ss[1]) / scale < 1e-6);
}

TEST_CASE("undriven decoupled cavity decays exponentially") {
    SystemParams p;
    p.kappa_a = 0.8;
    p.kappa_b = 0.6;
    p.gamma = 0.0;
    p.tau = 0.25;
    const Topology topo{TopologyKind::Separated, Orientation::I, 1, 1};
    DdeConfig c;
    c.total_time = 8.0;
    c.drive_alpha = 1.0;
    c.drive_beta = 0.0;
    c.record_stride = 4;
    const Trajectory traj = integrate(p, topo, c);
    // analytic step response of a bare lossy mode
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const cplx expect =
            -2.0 / std::sqrt(p.kappa_a) * (1.0 - std::exp(-p.kappa_a / 2.0 * t));
        CHECK(std::abs(traj.means[i][0] - expect) < 1e-9);
        CHECK(std::abs(traj.means[i][1]) < 1e-12);
    }
    // input-output relation at the recorded samples
    const auto& out = traj.outputs.back();
    CHECK(std::abs(out[0] - (c.drive_alpha +
                             std::sqrt(p.kappa_a) * traj.means.back()[0])) < 1e-14);
}

TEST_CASE("step halving shows fourth-order convergence") {
    std::mt19937 rng(3);
    const auto dd = checks::dde_duality_worst(rng, 32);
    CHECK(dd.steady_rel < 1e-6);
    CHECK(dd.order > 3.5);
}

TEST_CASE("markovian limit drops the delay structure") {
    const SystemParams p = stiff_free();
    const Topology topo{TopologyKind::Braided, Orientation::I, 2, 2};
    DdeConfig c;
    c.total_time = 40.0;
    c.markovian = true;
    c.record_stride = 1 << 20;
    const Trajectory markov = integrate(p, topo, c);
    c.markovian = false;
    const Trajectory delayed = integrate(p, topo, c);
    CHECK(std::isfinite(std::abs(markov.means.back()[0])));
    // the two dynamics genuinely differ for multi-point layouts
    CHECK(std::abs(markov.means.back()[0] - delayed.means.back()[0]) > 1e-6);
}
