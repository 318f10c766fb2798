#pragma once

#include "gyro/linear_response.hpp"

namespace gyro {

struct DriveConfig {
    cplx alpha = 1.0;   // probe amplitude at port D1
    double r = 1.0;     // |beta/alpha|
    double theta = 0.0; // arg(beta/alpha)

    cplx beta() const { return alpha * r * expi(theta); }
};

struct SensingReport {
    double signal_alpha = 0.0, signal_beta = 0.0;  // |<eps_out>|^2
    double noise_alpha = 0.0, noise_beta = 0.0;    // shot noise, computed
    double snr_alpha = 0.0, snr_beta = 0.0;        // per input photon
    double sens_alpha = 0.0, sens_beta = 0.0;      // minimum detectable Omega^2
    bool sens_alpha_infinite = false;              // port carries no Omega signal
    bool sens_beta_infinite = false;
    double photons_in = 0.0;                       // |alpha|^2 + |beta|^2
};

/* Closed-form SNR / sensitivity cases printed for omega = Delta = 0. */
enum class ClosedFormCase {
    StrictBraidedI,       // N = M = 2
    StrictBraidedII,
    GeneralBraidedI,      // N = 2, M = 3
    GeneralBraidedII,     // N = 3, M = 2
    TraditionalSingle,    // coincident single-point system
    TraditionalDirect,    // direct coherent coupling
};

struct UnsupportedClosedFormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Maps a layout onto its closed-form case; throws UnsupportedClosedFormError
 * (pointing at report()) when no printed form exists. */
ClosedFormCase closed_form_case(const SystemLayout& layout);

/* Full pipeline: signals, computed shot noise, SNR per photon, and the
 * finite-difference sensitivities. */
SensingReport report(const SystemParams& params, const SystemLayout& layout,
                     const DriveConfig& drive, double omega);

/* (R_alpha, R_beta) from the printed coefficient-function forms, valid at
 * omega = Delta = 0 only. phi is ignored for the traditional baselines. */
std::pair<double, double> snr_closed(const SystemParams& params,
                                     ClosedFormCase which, double phi);

/* Central finite difference of <eps_out> in u = Omega^2 at u0 = (1e-3
 * gamma_y)^2 with one Richardson step; returns |noise / derivative| and flags
 * ports with vanishing derivative as infinite. */
struct SensitivityPair {
    double alpha = 0.0, beta = 0.0;
    bool alpha_infinite = false, beta_infinite = false;
};
SensitivityPair sensitivity_numeric(const SystemParams& params,
                                    const SystemLayout& layout,
                                    const DriveConfig& drive, double omega);

/* Leading-order closed sensitivities with prefactor gamma_y kappa/(16|alpha|). */
SensitivityPair sensitivity_closed(const SystemParams& params,
                                   ClosedFormCase which, double phi,
                                   const DriveConfig& drive);

}  // namespace gyro
