#pragma once

#include <random>
#include <string>
#include <vector>

#include "gyro/analysis.hpp"

namespace gyro::checks {

/* Worst-case residuals of the model identities; each function returns the
 * maximum observed residual in the units stated by its comment. These back
 * both the `validate` CLI command and the acceptance suite. */

// |closed - bruteforce| / (gamma (N+M)^2), all kinds, N, M <= max_points,
// all legal nest indices, phi_samples points in [0, 2 pi]
double oracle_equivalence_worst(int max_points = 8, int phi_samples = 64);

// representative layouts of every kind plus the direct baseline
std::vector<SystemLayout> representative_layouts();

SystemParams random_params(std::mt19937& rng);

// |A + A^dag + B B^dag| / max(1, |A|), sets_per_layout random draws each
double passivity_worst(std::mt19937& rng, int sets_per_layout = 100);

// |G G^dag - I| over omega in [-span, span] * kappa, points samples
double unitarity_worst(double span = 10.0, int points = 201);

// |(1/2) sum_j |G_ej|^2 - 1/2| over the same omega sweep
double shot_noise_worst(double span = 10.0, int points = 201);

// sigma from A elements vs from G elements, plus mirror antisymmetry
double sigma_consistency_worst(int phi_samples = 101);

// strict braided N=2 sigma(0) against (2 + 2 cos 2 phi)/(3 + 2 cos 2 phi),
// separated against +-1, nested N=2, n=1 against 0
double sigma_formula_worst(int phi_samples = 512);

// response() versus the hand-expanded transfer elements, relative
double explicit_transfer_worst(std::mt19937& rng, int sets = 25);

// closed-form SNR versus pipeline, relative, over phi grid and the printed
// cooperativity set for every closed-form case
double snr_closed_worst(int phi_samples = 101);

// finite-difference sensitivity versus closed forms in the kappa >> gamma_x
// regime, relative
double sensitivity_agreement_worst();

// closed versus numeric reciprocal-point sets, nested and strict braided,
// N <= max_points; returns the worst set distance (Hausdorff)
double reciprocal_sets_worst(int max_points = 6);

struct DdeDuality {
    double steady_rel = 0.0;  // worst |tail - steady| / |steady| over kinds
    double order = 0.0;       // smallest observed step-halving order
};
DdeDuality dde_duality_worst(std::mt19937& rng, int steps_per_tau = 32);

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/* The full battery, optionally restricted by substring filter; base_params
 * feed an extra passivity probe so deliberately unphysical configurations
 * (for example injected gain) surface as check failures. */
std::vector<CheckResult> run_all(unsigned seed, const SystemParams& base_params,
                                 double omega_span = 10.0,
                                 const std::string& filter = "");

}  // namespace gyro::checks
