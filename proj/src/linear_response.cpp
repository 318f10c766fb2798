#include "gyro/linear_response.hpp"

#include <cmath>
#include <sstream>

namespace gyro {

void SystemParams::validate() const {
    if (kappa_a < 0 || kappa_b < 0 || gamma < 0 || gamma_x < 0 || gamma_y < 0 ||
        omega_rot < 0)
        throw std::invalid_argument("params: all rates must be nonnegative");
    if (tau <= 0) throw std::invalid_argument("params: tau must be positive");
}

double SystemParams::cooperativity() const {
    if (kappa_a != kappa_b)
        throw std::invalid_argument(
            "cooperativity is reported only for kappa_a == kappa_b");
    return 4.0 * gamma * gamma / (kappa_a * kappa_a);
}

void SystemParams::set_cooperativity(double co) {
    if (kappa_a != kappa_b)
        throw std::invalid_argument(
            "cooperativity is defined only for kappa_a == kappa_b");
    if (co < 0) throw std::invalid_argument("cooperativity must be nonnegative");
    gamma = 0.5 * kappa_a * std::sqrt(co);
}

std::pair<cplx, cplx> susceptibilities(const SystemParams& params, double omega) {
    const cplx i(0.0, 1.0);
    const cplx chi1 = i * (-omega + params.delta1) - params.kappa_a / 2.0;
    const cplx den = i * (-omega + params.delta2) - params.gamma_y / 2.0;
    if (std::abs(den) == 0.0)
        throw DegenerateEliminationError(
            "b_y elimination pole: gamma_y = 0 and omega = delta2");
    const cplx chi2 = i * (-omega + params.delta2) -
                      (params.kappa_b + params.gamma_x) / 2.0 +
                      params.omega_rot * params.omega_rot / den;
    return {chi1, chi2};
}

namespace {

// b_y response denominator, shared by chi2 and the f_y input column
cplx elimination_denominator(const SystemParams& params, double omega) {
    const cplx den = cplx(0.0, 1.0) * (-omega + params.delta2) - params.gamma_y / 2.0;
    if (std::abs(den) == 0.0)
        throw DegenerateEliminationError(
            "b_y elimination pole: gamma_y = 0 and omega = delta2");
    return den;
}

Mat2 invert(const Mat2& a, double omega) {
    const cplx det = a.det();
    const double scale = a.max_abs();
    if (std::abs(det) < 1e-14 * scale * scale) {
        std::ostringstream msg;
        msg << "A(omega) singular at omega = " << omega;
        throw SingularResponseError(msg.str());
    }
    Mat2 inv;
    inv(0, 0) = a(1, 1) / det;
    inv(0, 1) = -a(0, 1) / det;
    inv(1, 0) = -a(1, 0) / det;
    inv(1, 1) = a(0, 0) / det;
    return inv;
}

ResponseSet assemble(const SystemParams& params, double omega, const Mat2& a_g,
                     cplx waveguide_a, cplx waveguide_b) {
    ResponseSet rs;
    rs.omega = omega;
    rs.phi = params.phi_at(omega);

    const auto [chi1, chi2] = susceptibilities(params, omega);
    rs.a_matrix = a_g;
    rs.a_matrix(0, 0) += chi1;
    rs.a_matrix(1, 1) += chi2;

    const cplx den = elimination_denominator(params, omega);
    Mat25& b = rs.b_matrix;
    // |.| keeps diagnostic runs with injected gain (negative rates) finite, so
    // the passivity check can report the violation instead of NaN
    b(0, 0) = std::sqrt(std::abs(params.kappa_a));
    b(1, 1) = std::sqrt(std::abs(params.kappa_b));
    b(0, 2) = waveguide_a;
    b(1, 2) = waveguide_b;
    b(1, 3) = std::sqrt(std::abs(params.gamma_x));
    b(1, 4) = -params.omega_rot * std::sqrt(std::abs(params.gamma_y)) / den;

    const Mat2 a_inv = invert(rs.a_matrix, omega);
    const double root_k[2] = {std::sqrt(params.kappa_a), std::sqrt(params.kappa_b)};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 5; ++c) {
            cplx acc = r == c ? 1.0 : 0.0;
            for (int k = 0; k < 2; ++k) acc += root_k[r] * a_inv(r, k) * b(k, c);
            rs.g_matrix(r, c) = acc;
        }

    // residual of A + A^dag + B B^dag = 0
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            cplx acc = rs.a_matrix(r, c) + std::conj(rs.a_matrix(c, r));
            for (int j = 0; j < 5; ++j) acc += b(r, j) * std::conj(b(c, j));
            rs.passivity_residual = std::max(rs.passivity_residual, std::abs(acc));
        }
    // residual of G G^dag = I
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            cplx acc = r == c ? -1.0 : 0.0;
            for (int j = 0; j < 5; ++j)
                acc += rs.g_matrix(r, j) * std::conj(rs.g_matrix(c, j));
            rs.unitarity_residual = std::max(rs.unitarity_residual, std::abs(acc));
        }
    return rs;
}

}  // namespace

ResponseSet response(const SystemParams& params, const Topology& topo,
                     double omega) {
    const double phi = params.phi_at(omega);
    const Mat2 a_g = coupling_matrix_closed(topo, phi, params.gamma);

    const PointLayout lay = layout(topo);
    const double root_gamma = std::sqrt(params.gamma);
    cplx wave_a = 0.0, wave_b = 0.0;
    for (int p : lay.a_positions) wave_a += root_gamma * expi(phi * p);
    for (int p : lay.b_positions) wave_b += root_gamma * expi(phi * p);

    return assemble(params, omega, a_g, wave_a, wave_b);
}

ResponseSet response(const SystemParams& params, const SystemLayout& layout,
                     double omega) {
    if (const auto* topo = std::get_if<Topology>(&layout))
        return response(params, *topo, omega);

    const auto& direct = std::get<DirectCoupling>(layout);
    // coherent coupling i g (a^dag b_x - b_x^dag a): no waveguide column
    Mat2 a_d;
    a_d(0, 1) = direct.g;
    a_d(1, 0) = -direct.g;
    return assemble(params, omega, a_d, 0.0, 0.0);
}

Mat25 transfer_elements_explicit(const SystemParams& params, const Topology& topo,
                                 double omega) {
    const double phi = params.phi_at(omega);
    const PointLayout lay = layout(topo);

    const cplx g_aa = gamma_sum(lay.a_positions, lay.a_positions, phi, params.gamma);
    const cplx g_ab = gamma_sum(lay.a_positions, lay.b_positions, phi, params.gamma);
    const cplx g_ba = gamma_sum(lay.b_positions, lay.a_positions, phi, params.gamma);
    const cplx g_bb = gamma_sum(lay.b_positions, lay.b_positions, phi, params.gamma);

    const auto [chi1, chi2] = susceptibilities(params, omega);
    const cplx det = (chi1 + g_aa) * (chi2 + g_bb) - g_ab * g_ba;
    const double scale =
        std::max({std::abs(chi1 + g_aa), std::abs(chi2 + g_bb), std::abs(g_ab),
                  std::abs(g_ba)});
    if (std::abs(det) < 1e-14 * scale * scale) {
        std::ostringstream msg;
        msg << "A(omega) singular at omega = " << omega;
        throw SingularResponseError(msg.str());
    }

    const double ka = params.kappa_a, kb = params.kappa_b;
    const cplx den = elimination_denominator(params, omega);
    const double root_gamma = std::sqrt(params.gamma);
    cplx sum_a = 0.0, sum_b = 0.0;
    for (int p : lay.a_positions) sum_a += expi(phi * p);
    for (int p : lay.b_positions) sum_b += expi(phi * p);

    Mat25 g;
    g(0, 0) = 1.0 + ka * (chi2 + g_bb) / det;
    g(0, 1) = -std::sqrt(ka * kb) * g_ab / det;
    g(0, 2) = std::sqrt(ka) * root_gamma * ((chi2 + g_bb) * sum_a - g_ab * sum_b) / det;
    g(0, 3) = -std::sqrt(ka * params.gamma_x) * g_ab / det;
    // the f_y column signs follow from cofactor expansion of A^-1 B with the
    // B entry -Omega sqrt(gamma_y)/den; only |.|^2 of this column is observable
    g(0, 4) = std::sqrt(ka * params.gamma_y) * g_ab * params.omega_rot / (den * det);
    g(1, 0) = -std::sqrt(ka * kb) * g_ba / det;
    g(1, 1) = 1.0 + kb * (chi1 + g_aa) / det;
    g(1, 2) = std::sqrt(kb) * root_gamma * ((chi1 + g_aa) * sum_b - g_ba * sum_a) / det;
    g(1, 3) = std::sqrt(kb * params.gamma_x) * (chi1 + g_aa) / det;
    g(1, 4) = -std::sqrt(kb * params.gamma_y) * (chi1 + g_aa) * params.omega_rot /
              (den * det);
    return g;
}

double nonreciprocal_strength(const SystemParams& params, const Topology& topo,
                              double omega) {
    const double phi = params.phi_at(omega);
    const Mat2 a_g = coupling_matrix_closed(topo, phi, params.gamma);
    const double up = std::norm(a_g(1, 0)), down = std::norm(a_g(0, 1));
    if (up + down == 0.0)
        throw UndefinedSigmaError("sigma undefined: both coupling off-diagonals vanish");
    const double sigma_a = (up - down) / (up + down);

    const ResponseSet rs = response(params, topo, omega);
    const double gu = std::norm(rs.g_matrix(1, 0)), gd = std::norm(rs.g_matrix(0, 1));
    if (gu + gd > 0.0) {
        const double sigma_g = (gu - gd) / (gu + gd);
        if (std::abs(sigma_a - sigma_g) > 1e-10)
            throw std::runtime_error("sigma mismatch between A and G elements");
    }
    return sigma_a;
}

}  // namespace gyro
