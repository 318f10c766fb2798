#pragma once

#include <stdexcept>
#include <variant>

#include "gyro/topology.hpp"
#include "gyro/types.hpp"

namespace gyro {

/* All physical rates and detunings of the two-cavity system. Frequencies are
 * in rotating-frame units; positions are in units of tau. */
struct SystemParams {
    double delta1 = 0.0;             // drive detuning from mode a
    double delta2 = 0.0;             // drive detuning from mode b
    double kappa_a = 1.0;            // port coupling of mode a
    double kappa_b = 1.0;            // port coupling of mode b_x
    double gamma = 0.0;              // waveguide coupling per point
    double gamma_x = 0.0;            // thermal decay of mode x
    double gamma_y = 0.0;            // thermal decay of mode y
    double omega_rot = 0.0;          // angular velocity Omega
    double tau = 1.0;                // nearest-neighbor delay
    double drive_phase_per_tau = 0.0;  // omega_d * tau

    void validate() const;
    // double-photon cooperativity, defined for kappa_a == kappa_b
    double cooperativity() const;
    // sets gamma so that cooperativity() == co
    void set_cooperativity(double co);
    // phase per lattice step at evaluation frequency omega
    double phi_at(double omega) const { return drive_phase_per_tau - omega * tau; }
};

/* The traditional direct-coupling baseline: both cavities off the waveguide,
 * coherently coupled with strength g = sqrt(Co) kappa / 2. */
struct DirectCoupling {
    double g = 0.0;
};

/* What the waveguide column of the system couples to: either a multi-point
 * topology or the direct-coupling baseline (no waveguide column at all). */
using SystemLayout = std::variant<Topology, DirectCoupling>;

struct ResponseSet {
    double omega = 0.0;
    double phi = 0.0;
    Mat2 a_matrix;                   // A(omega) = A_o + A_g
    Mat25 b_matrix;                  // columns (alpha_in, beta_in, c_in, f_x, f_y)
    Mat25 g_matrix;                  // transfer function, rows (alpha_out, beta_out)
    double passivity_residual = 0.0; // max |A + A^dag + B B^dag|
    double unitarity_residual = 0.0; // max |G G^dag - I|
};

struct DegenerateEliminationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularResponseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UndefinedSigmaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* chi_1 = i(-omega + Delta_1) - kappa_a/2,
 * chi_2 = i(-omega + Delta_2) - (kappa_b + gamma_x)/2 + Omega^2 / D with
 * D = i(-omega + Delta_2) - gamma_y/2 (the eliminated b_y response). */
std::pair<cplx, cplx> susceptibilities(const SystemParams& params, double omega);

ResponseSet response(const SystemParams& params, const Topology& topo,
                     double omega);
ResponseSet response(const SystemParams& params, const SystemLayout& layout,
                     double omega);

/* G rebuilt from the hand-expanded cofactor expressions instead of matrix
 * inversion; test oracle for the production path. */
Mat25 transfer_elements_explicit(const SystemParams& params,
                                 const Topology& topo, double omega);

/* sigma = (|A21|^2 - |A12|^2) / (|A21|^2 + |A12|^2) from the coupling-matrix
 * off-diagonals; the equal G-element form is asserted inside. */
double nonreciprocal_strength(const SystemParams& params, const Topology& topo,
                              double omega);

}  // namespace gyro
