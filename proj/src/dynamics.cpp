#include "gyro/dynamics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace gyro {

void DdeConfig::validate() const {
    if (steps_per_tau < 8)
        throw std::invalid_argument("dde: steps_per_tau must be >= 8");
    if (total_time <= 0)
        throw std::invalid_argument("dde: total_time must be positive");
    if (record_stride < 1)
        throw std::invalid_argument("dde: record_stride must be >= 1");
}

namespace {

using State = std::array<cplx, 3>;

struct DelayTerm {
    int target;      // mode index receiving the term (0 = a, 1 = b_x)
    int source;
    int delay_steps; // in integration steps, always a multiple of steps_per_tau
    cplx coeff;
};

struct DdeSystem {
    cplx local[3][3] = {};           // time-local coefficient matrix
    std::array<cplx, 3> drive = {};  // constant drive term for t >= 0
    std::vector<DelayTerm> delays;
};

DdeSystem build_system(const SystemParams& params, const Topology& topo,
                       const DdeConfig& config) {
    DdeSystem sys;
    const cplx i(0.0, 1.0);
    sys.local[0][0] = i * params.delta1 - params.kappa_a / 2.0;
    sys.local[1][1] = i * params.delta2 - (params.kappa_b + params.gamma_x) / 2.0;
    sys.local[1][2] = params.omega_rot;
    sys.local[2][1] = -params.omega_rot;
    sys.local[2][2] = i * params.delta2 - params.gamma_y / 2.0;

    sys.drive[0] = -std::sqrt(params.kappa_a) * config.drive_alpha;
    sys.drive[1] = -std::sqrt(params.kappa_b) * config.drive_beta;

    const PointLayout lay = layout(topo);
    const std::vector<int>* pos[2] = {&lay.a_positions, &lay.b_positions};
    const double phid = params.drive_phase_per_tau;

    // delay-indexed accumulation of -gamma Theta(h-s) e^{i omega_d (h-s) tau}
    std::map<std::array<int, 3>, cplx> acc;  // key (target, source, lattice delay)
    for (int tgt = 0; tgt < 2; ++tgt)
        for (int src = 0; src < 2; ++src)
            for (int h : *pos[tgt])
                for (int s : *pos[src]) {
                    const int d = h - s;
                    if (config.markovian) {
                        sys.local[tgt][src] +=
                            -params.gamma * expi(phid * std::abs(d));
                        continue;
                    }
                    if (d < 0) continue;
                    if (d == 0) {
                        sys.local[tgt][src] += -params.gamma * 0.5;
                        continue;
                    }
                    acc[{tgt, src, d}] += -params.gamma * expi(phid * d);
                }
    for (const auto& [key, coeff] : acc)
        sys.delays.push_back({key[0], key[1], key[2] * config.steps_per_tau, coeff});
    return sys;
}

}  // namespace

Trajectory integrate(const SystemParams& params, const Topology& topo,
                     const DdeConfig& config) {
    params.validate();
    config.validate();
    const DdeSystem sys = build_system(params, topo, config);

    const double h = params.tau / config.steps_per_tau;
    const long steps = std::lround(std::ceil(config.total_time / h));

    std::vector<State> xs(steps + 1, State{});
    std::vector<State> fs(steps + 1, State{});

    // delayed source value at grid position j + frac (frac in {0, 1/2, 1});
    // half-step values use the cubic Hermite midpoint of the bracketing nodes
    auto delayed = [&](long j, int twice_frac, int mode) -> cplx {
        if (twice_frac == 0) return j < 0 ? cplx{} : xs[j][mode];
        if (twice_frac == 2) return j + 1 < 0 ? cplx{} : xs[j + 1][mode];
        // the half-step target t = (j + 1/2) h is still inside the zero
        // history for j < 0; interpolating across the switch-on would pick up
        // an O(h) error from the derivative jump at t = 0
        if (j < 0) return cplx{};
        const cplx x0 = j < 0 ? cplx{} : xs[j][mode];
        const cplx x1 = j + 1 < 0 ? cplx{} : xs[j + 1][mode];
        const cplx f0 = j < 0 ? cplx{} : fs[j][mode];
        const cplx f1 = j + 1 < 0 ? cplx{} : fs[j + 1][mode];
        return 0.5 * (x0 + x1) + (h / 8.0) * (f0 - f1);
    };

    // RHS at grid position j + twice_frac/2 with trial state y
    auto rhs = [&](long j, int twice_frac, const State& y) -> State {
        State dy{};
        for (int r = 0; r < 3; ++r) {
            cplx acc = sys.drive[r];
            for (int c = 0; c < 3; ++c) acc += sys.local[r][c] * y[c];
            dy[r] = acc;
        }
        for (const DelayTerm& term : sys.delays)
            dy[term.target] +=
                term.coeff * delayed(j - term.delay_steps, twice_frac, term.source);
        return dy;
    };

    auto axpy = [](const State& x, double a, const State& d) {
        State r;
        for (int m = 0; m < 3; ++m) r[m] = x[m] + a * d[m];
        return r;
    };

    fs[0] = rhs(0, 0, xs[0]);
    for (long j = 0; j < steps; ++j) {
        const State& x = xs[j];
        const State k1 = fs[j];
        const State k2 = rhs(j, 1, axpy(x, h / 2.0, k1));
        const State k3 = rhs(j, 1, axpy(x, h / 2.0, k2));
        const State k4 = rhs(j, 2, axpy(x, h, k3));
        State next;
        for (int m = 0; m < 3; ++m)
            next[m] = x[m] + (h / 6.0) * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
        xs[j + 1] = next;
        fs[j + 1] = rhs(j + 1, 0, next);
    }

    Trajectory traj;
    const double root_ka = std::sqrt(params.kappa_a);
    const double root_kb = std::sqrt(params.kappa_b);
    auto record = [&](long j) {
        traj.times.push_back(j * h);
        traj.means.push_back(xs[j]);
        traj.outputs.push_back({config.drive_alpha + root_ka * xs[j][0],
                                config.drive_beta + root_kb * xs[j][1]});
    };
    long last = -1;
    for (long j = 0; j <= steps; j += config.record_stride) record(last = j);
    if (last != steps) record(steps);  // the tail sample is always kept
    return traj;
}

std::array<cplx, 2> steady_state(const SystemParams& params,
                                 const SystemLayout& layout, cplx alpha,
                                 cplx beta) {
    const ResponseSet rs = response(params, layout, 0.0);
    const Mat2& a = rs.a_matrix;
    const cplx det = a.det();
    const double scale = a.max_abs();
    if (std::abs(det) < 1e-14 * scale * scale)
        throw SingularResponseError("A(0) singular in steady_state");
    const cplx u0 = rs.b_matrix(0, 0) * alpha + rs.b_matrix(0, 1) * beta;
    const cplx u1 = rs.b_matrix(1, 0) * alpha + rs.b_matrix(1, 1) * beta;
    return {(a(1, 1) * u0 - a(0, 1) * u1) / det,
            (-a(1, 0) * u0 + a(0, 0) * u1) / det};
}

}  // namespace gyro
