#include "gyro/sensing.hpp"

#include <cmath>

namespace gyro {

ClosedFormCase closed_form_case(const SystemLayout& layout) {
    if (std::holds_alternative<DirectCoupling>(layout))
        return ClosedFormCase::TraditionalDirect;
    const Topology& topo = std::get<Topology>(layout);
    if (topo.kind == TopologyKind::Coincident)
        return ClosedFormCase::TraditionalSingle;
    if (topo.kind == TopologyKind::Braided) {
        if (topo.n_a == 2 && topo.n_b == 2)
            return topo.orientation == Orientation::I
                       ? ClosedFormCase::StrictBraidedI
                       : ClosedFormCase::StrictBraidedII;
        if (topo.orientation == Orientation::I && topo.n_a == 2 && topo.n_b == 3)
            return ClosedFormCase::GeneralBraidedI;
        if (topo.orientation == Orientation::II && topo.n_a == 3 && topo.n_b == 2)
            return ClosedFormCase::GeneralBraidedII;
    }
    throw UnsupportedClosedFormError(
        "no printed closed form for this layout; use report()");
}

namespace {

struct Coefficients {
    cplx f_alpha, f_beta;  // numerator coefficient functions per port
    cplx big_f1, big_f2;   // denominator coefficient functions
};

Coefficients coefficients(ClosedFormCase which, double co, double phi) {
    const double s = std::sqrt(co);
    const cplx e = expi(phi);
    const cplx e2 = e * e, e3 = e2 * e, e4 = e3 * e;

    Coefficients c;
    switch (which) {
        case ClosedFormCase::StrictBraidedI:
        case ClosedFormCase::StrictBraidedII: {
            const cplx f1 = 1.0 + s * (1.0 - e + e2);
            const cplx f2 = 1.0 + s * (1.0 - 2.0 * e + e2 - e3);
            c.big_f1 = 1.0 + co + 2.0 * s * (1.0 + e2);
            c.big_f2 = 1.0 + s * (1.0 + e2);
            const bool first = which == ClosedFormCase::StrictBraidedI;
            c.f_alpha = first ? f1 : f2;
            c.f_beta = first ? f2 : f1;
            break;
        }
        case ClosedFormCase::GeneralBraidedI:
        case ClosedFormCase::GeneralBraidedII: {
            const cplx f1 = 1.0 + s * (1.5 + e2 + e3);
            const cplx f2 = 1.0 + s * (1.0 - 2.0 * e - e3 - e4);
            c.big_f1 = 1.0 + co * (1.5 + e + 0.5 * e2 + e3) +
                       s * (2.5 + e + 2.0 * e2 + e3);
            const bool first = which == ClosedFormCase::GeneralBraidedI;
            // the a-a coupling polynomial differs between the orientations, so
            // the gamma_x weight F2 does as well
            c.big_f2 = first ? 1.0 + s * (1.0 + e2)
                             : 1.0 + s * (1.5 + e + e2 + e3);
            c.f_alpha = first ? f1 : f2;
            c.f_beta = first ? f2 : f1;
            break;
        }
        case ClosedFormCase::TraditionalSingle:
            c.f_alpha = c.f_beta = 1.0;
            c.big_f1 = 1.0 + s;
            c.big_f2 = 1.0 + s / 2.0;
            break;
        case ClosedFormCase::TraditionalDirect:
            c.f_alpha = 1.0 + s;
            c.f_beta = 1.0 - s;
            c.big_f1 = 1.0 + co;
            c.big_f2 = 1.0;
            break;
    }
    return c;
}

double closed_kappa(const SystemParams& params) {
    if (params.kappa_a != params.kappa_b)
        throw UnsupportedClosedFormError(
            "closed forms assume kappa_a == kappa_b");
    return params.kappa_a;
}

}  // namespace

std::pair<double, double> snr_closed(const SystemParams& params,
                                     ClosedFormCase which, double phi) {
    const double kappa = closed_kappa(params);
    const Coefficients c = coefficients(which, params.cooperativity(), phi);
    const double residual = params.gamma_x +
                            4.0 * params.omega_rot * params.omega_rot / params.gamma_y;
    const cplx denom = c.big_f1 * kappa / 2.0 + c.big_f2 * residual / 2.0;
    const double r_alpha = 2.0 * std::norm(1.0 - (c.f_alpha * kappa + residual) / denom);
    const double r_beta = 2.0 * std::norm(1.0 - c.f_beta * kappa / denom);
    return {r_alpha, r_beta};
}

SensitivityPair sensitivity_closed(const SystemParams& params,
                                   ClosedFormCase which, double phi,
                                   const DriveConfig& drive) {
    const double kappa = closed_kappa(params);
    const Coefficients c = coefficients(which, params.cooperativity(), phi);
    const double prefactor =
        params.gamma_y * kappa / (16.0 * std::abs(drive.alpha));
    const double f1sq = std::norm(c.big_f1);

    SensitivityPair out;
    const double alpha_den = std::abs(c.big_f1 - c.f_alpha * c.big_f2);
    const double beta_den = std::abs(c.f_beta * c.big_f2);
    if (alpha_den < 1e-300) out.alpha_infinite = true;
    else out.alpha = prefactor * f1sq / alpha_den;
    if (beta_den < 1e-300) out.beta_infinite = true;
    else out.beta = prefactor * f1sq / beta_den;
    return out;
}

namespace {

std::array<cplx, 2> mean_outputs(const SystemParams& params,
                                 const SystemLayout& layout,
                                 const DriveConfig& drive, double omega) {
    const ResponseSet rs = response(params, layout, omega);
    const cplx ratio = drive.r * expi(drive.theta);
    return {drive.alpha * (rs.g_matrix(0, 0) + ratio * rs.g_matrix(0, 1)),
            drive.alpha * (rs.g_matrix(1, 0) + ratio * rs.g_matrix(1, 1))};
}

}  // namespace

SensitivityPair sensitivity_numeric(const SystemParams& params,
                                    const SystemLayout& layout,
                                    const DriveConfig& drive, double omega) {
    if (std::abs(drive.alpha) == 0.0)
        throw std::invalid_argument("sensitivity requires |alpha| > 0");
    const double u0 = std::pow(1e-3 * params.gamma_y, 2);

    auto outputs_at = [&](double u) {
        SystemParams p = params;
        p.omega_rot = std::sqrt(u);
        return mean_outputs(p, layout, drive, omega);
    };

    const auto lo1 = outputs_at(u0 * 0.5), hi1 = outputs_at(u0 * 1.5);
    const auto lo2 = outputs_at(u0 * 0.75), hi2 = outputs_at(u0 * 1.25);

    // shot noise at the working point, computed from the transfer row norms
    SystemParams pc = params;
    pc.omega_rot = std::sqrt(u0);
    const ResponseSet rs = response(pc, layout, omega);
    double noise[2];
    for (int r = 0; r < 2; ++r) {
        double acc = 0.0;
        for (int j = 0; j < 5; ++j) acc += std::norm(rs.g_matrix(r, j));
        noise[r] = 0.5 * acc;
    }

    SensitivityPair out;
    for (int port = 0; port < 2; ++port) {
        const cplx d1 = (hi1[port] - lo1[port]) / u0;
        const cplx d2 = (hi2[port] - lo2[port]) / (0.5 * u0);
        const cplx d = (4.0 * d2 - d1) / 3.0;  // one Richardson step
        const double mag = std::abs(d);
        double* value = port == 0 ? &out.alpha : &out.beta;
        bool* inf = port == 0 ? &out.alpha_infinite : &out.beta_infinite;
        if (mag < 1e-300) *inf = true;
        else *value = noise[port] / mag;
    }
    return out;
}

SensingReport report(const SystemParams& params, const SystemLayout& layout,
                     const DriveConfig& drive, double omega) {
    if (std::abs(drive.alpha) == 0.0)
        throw std::invalid_argument("report requires |alpha| > 0");
    const ResponseSet rs = response(params, layout, omega);
    const cplx ratio = drive.r * expi(drive.theta);

    SensingReport rep;
    const cplx out_a = drive.alpha * (rs.g_matrix(0, 0) + ratio * rs.g_matrix(0, 1));
    const cplx out_b = drive.alpha * (rs.g_matrix(1, 0) + ratio * rs.g_matrix(1, 1));
    rep.signal_alpha = std::norm(out_a);
    rep.signal_beta = std::norm(out_b);

    double row_norm[2];
    for (int r = 0; r < 2; ++r) {
        double acc = 0.0;
        for (int j = 0; j < 5; ++j) acc += std::norm(rs.g_matrix(r, j));
        row_norm[r] = acc;
    }
    rep.noise_alpha = 0.5 * row_norm[0];
    rep.noise_beta = 0.5 * row_norm[1];

    rep.snr_alpha = 2.0 * std::norm(rs.g_matrix(0, 0) + ratio * rs.g_matrix(0, 1));
    rep.snr_beta = 2.0 * std::norm(rs.g_matrix(1, 0) + ratio * rs.g_matrix(1, 1));

    const SensitivityPair sens = sensitivity_numeric(params, layout, drive, omega);
    rep.sens_alpha = sens.alpha;
    rep.sens_beta = sens.beta;
    rep.sens_alpha_infinite = sens.alpha_infinite;
    rep.sens_beta_infinite = sens.beta_infinite;

    const cplx beta = drive.beta();
    rep.photons_in = std::norm(drive.alpha) + std::norm(beta);
    return rep;
}

}  // namespace gyro
