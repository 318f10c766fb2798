#include <random>

#include "doctest.h"
#include "gyro/topology.hpp"

using namespace gyro;

TEST_CASE("canonical lattice layouts") {
    SUBCASE("separated orientation I") {
        const auto lay = layout({TopologyKind::Separated, Orientation::I, 2, 3});
        CHECK(lay.a_positions == std::vector<int>{0, 1});
        CHECK(lay.b_positions == std::vector<int>{2, 3, 4});
    }
    SUBCASE("separated orientation II puts b first") {
        const auto lay = layout({TopologyKind::Separated, Orientation::II, 2, 3});
        CHECK(lay.b_positions == std::vector<int>{0, 1, 2});
        CHECK(lay.a_positions == std::vector<int>{3, 4});
    }
    SUBCASE("nested splits the outer mode around the inner block") {
        const auto lay =
            layout({TopologyKind::Nested, Orientation::I, 3, 2, 1});
        CHECK(lay.a_positions == std::vector<int>{0, 3, 4});
        CHECK(lay.b_positions == std::vector<int>{1, 2});
    }
    SUBCASE("braided interleaves, extra b points trail") {
        const auto lay = layout({TopologyKind::Braided, Orientation::I, 2, 4});
        CHECK(lay.a_positions == std::vector<int>{0, 2});
        CHECK(lay.b_positions == std::vector<int>{1, 3, 4, 5});
    }
    SUBCASE("coincident shares one point") {
        const auto lay = layout({TopologyKind::Coincident, Orientation::I, 1, 1});
        CHECK(lay.a_positions == std::vector<int>{0});
        CHECK(lay.b_positions == std::vector<int>{0});
    }
}

TEST_CASE("topology validation") {
    CHECK_THROWS_AS(layout({TopologyKind::Braided, Orientation::I, 3, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(layout({TopologyKind::Braided, Orientation::I, 1, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(layout({TopologyKind::Nested, Orientation::I, 3, 2}),
                    std::invalid_argument);  // missing nest index
    CHECK_THROWS_AS(layout({TopologyKind::Nested, Orientation::I, 3, 2, 3}),
                    std::invalid_argument);  // nest index out of range
    CHECK_THROWS_AS(layout({TopologyKind::Coincident, Orientation::I, 2, 1}),
                    std::invalid_argument);
    CHECK_NOTHROW(layout({TopologyKind::Braided, Orientation::I, 1, 1}));
}

TEST_CASE("coincident-point weight is one half") {
    const Mat2 m =
        coupling_matrix_bruteforce({TopologyKind::Coincident, Orientation::I, 1, 1},
                                   0.7, 2.0);
    for (int k = 0; k < 4; ++k) {
        CHECK(m.v[k].real() == doctest::Approx(-1.0));
        CHECK(m.v[k].imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("closed forms match the brute-force sums") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * pi);
    std::uniform_int_distribution<int> usize(1, 6);
    for (int trial = 0; trial < 300; ++trial) {
        Topology topo;
        topo.kind = static_cast<TopologyKind>(rng() % 3);
        topo.orientation = rng() % 2 ? Orientation::I : Orientation::II;
        topo.n_a = usize(rng);
        topo.n_b = usize(rng);
        if (topo.kind == TopologyKind::Nested) {
            const int outer = topo.orientation == Orientation::I ? topo.n_a
                                                                 : topo.n_b;
            if (outer < 2) continue;
            topo.nest_index = 1 + static_cast<int>(rng() % (outer - 1));
        }
        if (topo.kind == TopologyKind::Braided) {
            if (topo.orientation == Orientation::I) {
                if (topo.n_b < topo.n_a) std::swap(topo.n_a, topo.n_b);
                if (topo.n_b > topo.n_a && topo.n_a < 2) topo.n_a = 2;
            } else {
                if (topo.n_a < topo.n_b) std::swap(topo.n_a, topo.n_b);
                if (topo.n_a > topo.n_b && topo.n_b < 2) topo.n_b = 2;
            }
        }
        // include the removable singularities of the geometric forms
        const double phi = trial % 5 == 0   ? 0.0
                           : trial % 5 == 1 ? pi
                           : trial % 5 == 2 ? pi + 3e-9
                                            : uphi(rng);
        const double gamma = 0.3 + 0.01 * (trial % 7);
        const Mat2 closed = coupling_matrix_closed(topo, phi, gamma);
        const Mat2 brute = coupling_matrix_bruteforce(topo, phi, gamma);
        const double scale = gamma * (topo.n_a + topo.n_b) * (topo.n_a + topo.n_b);
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(closed.v[k] - brute.v[k]) <= 1e-12 * scale);
    }
}

TEST_CASE("text record round-trip") {
    const Topology cases[] = {
        {TopologyKind::Separated, Orientation::I, 2, 3},
        {TopologyKind::Nested, Orientation::II, 2, 4, 2},
        {TopologyKind::Braided, Orientation::I, 2, 5},
        {TopologyKind::Coincident, Orientation::I, 1, 1},
    };
    for (const Topology& topo : cases) {
        const std::string text = serialize(topo);
        const Topology back = parse_topology(text);
        CHECK(serialize(back) == text);
        CHECK(back.kind == topo.kind);
        CHECK(back.orientation == topo.orientation);
        CHECK(back.n_a == topo.n_a);
        CHECK(back.n_b == topo.n_b);
        CHECK(back.nest_index == topo.nest_index);
    }
    CHECK_THROWS_AS(parse_topology("twisted-i N=2 M=2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_topology("braided-i N=two"), std::invalid_argument);
}
