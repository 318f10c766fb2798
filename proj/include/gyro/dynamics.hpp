#pragma once

#include <vector>

#include "gyro/linear_response.hpp"

namespace gyro {

struct DdeConfig {
    int steps_per_tau = 32;          // K, integration step = tau / K
    double total_time = 0.0;
    cplx drive_alpha = 1.0;          // classical probe means switched on at t = 0
    cplx drive_beta = 0.0;
    bool markovian = false;          // replace delayed arguments by local ones
    int record_stride = 1;           // keep every record_stride-th step

    void validate() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::array<cplx, 3>> means;     // <a>, <b_x>, <b_y>
    std::vector<std::array<cplx, 2>> outputs;   // <alpha_out>, <beta_out>
};

/* Integrates the time-delayed mean-field equations of motion with zero history
 * for t < 0 and the constant classical drive switched on at t = 0. All delays
 * are integer multiples of tau, hence of the step, so delayed values are read
 * at exact grid indices; mid-stage values use a cubic Hermite midpoint. */
Trajectory integrate(const SystemParams& params, const Topology& topo,
                     const DdeConfig& config);

/* Frequency-domain steady state A(0)^-1 B(0) (alpha, beta, 0, 0, 0)^T,
 * returning the (a, b_x) pair for comparison with integrate() tails. */
std::array<cplx, 2> steady_state(const SystemParams& params,
                                 const SystemLayout& layout, cplx alpha,
                                 cplx beta);

}  // namespace gyro
