#include <random>

#include "doctest.h"
#include "gyro/validation.hpp"

using namespace gyro;

namespace {

SystemParams reference() {
    SystemParams p;
    p.kappa_a = p.kappa_b = 1.0;
    p.gamma_x = p.gamma_y = 0.1;
    p.omega_rot = 0.05;
    p.tau = 0.1;
    p.drive_phase_per_tau = pi;
    p.set_cooperativity(0.1);
    return p;
}

}  // namespace

TEST_CASE("susceptibilities match their defining expressions") {
    SystemParams p = reference();
    p.delta1 = 0.3;
    p.delta2 = -0.2;
    const double omega = 0.7;
    const auto [chi1, chi2] = susceptibilities(p, omega);
    const cplx i(0.0, 1.0);
    CHECK(std::abs(chi1 - (i * (-omega + 0.3) - 0.5)) < 1e-15);
    const cplx den = i * (-omega - 0.2) - 0.05;
    const cplx expect2 = i * (-omega - 0.2) - (1.0 + 0.1) / 2.0 + 0.0025 / den;
    CHECK(std::abs(chi2 - expect2) < 1e-15);
}

TEST_CASE("degenerate elimination is reported") {
    SystemParams p = reference();
    p.gamma_y = 0.0;
    p.delta2 = 0.4;
    CHECK_THROWS_AS(susceptibilities(p, 0.4), DegenerateEliminationError);
}

TEST_CASE("passivity and unitarity hold on random draws") {
    std::mt19937 rng(11);
    CHECK(checks::passivity_worst(rng, 10) < 1e-12);
    CHECK(checks::unitarity_worst(4.0, 21) < 1e-10);
}

TEST_CASE("cooperativity round-trip") {
    SystemParams p = reference();
    p.set_cooperativity(0.37);
    CHECK(p.cooperativity() == doctest::Approx(0.37).epsilon(1e-14));
    p.kappa_b = 2.0;
    CHECK_THROWS_AS(p.cooperativity(), std::invalid_argument);
}

TEST_CASE("explicit transfer elements equal the inversion path") {
    std::mt19937 rng(5);
    CHECK(checks::explicit_transfer_worst(rng, 10) < 1e-12);
}

TEST_CASE("direct-coupling baseline") {
    const SystemParams p = reference();
    const SystemLayout direct = DirectCoupling{p.gamma};
    const ResponseSet rs = response(p, direct, 0.3);
    // antisymmetric coherent coupling, no waveguide input column
    CHECK(rs.a_matrix(0, 1) == cplx(p.gamma));
    CHECK(rs.a_matrix(1, 0) == cplx(-p.gamma));
    CHECK(rs.b_matrix(0, 2) == cplx(0.0));
    CHECK(rs.b_matrix(1, 2) == cplx(0.0));
    CHECK(rs.passivity_residual < 1e-14);
    CHECK(rs.unitarity_residual < 1e-12);
}

TEST_CASE("nonreciprocal strength limits") {
    SystemParams p = reference();
    const Topology sep_i{TopologyKind::Separated, Orientation::I, 2, 3};
    const Topology sep_ii{TopologyKind::Separated, Orientation::II, 3, 2};
    for (double phi : {0.1, 1.0, 2.5, 5.0}) {
        p.drive_phase_per_tau = phi;
        CHECK(nonreciprocal_strength(p, sep_i, 0.0) == doctest::Approx(1.0));
        CHECK(nonreciprocal_strength(p, sep_ii, 0.0) == doctest::Approx(-1.0));
    }
    p.gamma = 0.0;  // no waveguide coupling: sigma has no meaning
    CHECK_THROWS_AS(nonreciprocal_strength(p, sep_i, 0.0), UndefinedSigmaError);
}

TEST_CASE("sigma is antisymmetric under mirroring") {
    CHECK(checks::sigma_consistency_worst(31) < 1e-10);
}

TEST_CASE("negative rates violate passivity but stay finite") {
    SystemParams p = reference();
    p.gamma_x = -0.1;
    const ResponseSet rs =
        response(p, Topology{TopologyKind::Braided, Orientation::I, 2, 2}, 0.0);
    CHECK(rs.passivity_residual > 1e-3);
    CHECK(std::isfinite(rs.unitarity_residual));
}
