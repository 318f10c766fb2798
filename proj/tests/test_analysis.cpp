#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gyro/validation.hpp"

using namespace gyro;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.variable = SweepVariable::Phi;
    spec.grid.clear();
    for (int i = 0; i < 33; ++i) spec.grid.push_back(2.0 * pi * i / 32);
    spec.params = reference_params(0.1);
    spec.layout = Topology{TopologyKind::Braided, Orientation::I, 2, 2};
    spec.with_sensitivity = true;
    return spec;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("serial and parallel sweeps agree bit for bit") {
    const SweepSpec spec = small_spec();
    const CurveData serial = sweep(spec, ExecutionPolicy::Serial);
    const CurveData parallel = sweep(spec, ExecutionPolicy::Parallel);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (size_t i = 0; i < serial.rows.size(); ++i) {
        REQUIRE(serial.rows[i].size() == parallel.rows[i].size());
        for (size_t j = 0; j < serial.rows[i].size(); ++j)
            CHECK(serial.rows[i][j] == parallel.rows[i][j]);
    }
}

TEST_CASE("sweep validation") {
    SweepSpec spec = small_spec();
    spec.grid = {0.0};
    CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
    spec.grid = {0.3, 0.2};
    CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
    spec.variable = SweepVariable::Cooperativity;
    spec.grid = {-0.1, 0.2};
    CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
}

TEST_CASE("sweep columns carry the model residuals") {
    const CurveData data = sweep(small_spec());
    REQUIRE(data.columns.size() == 8);
    CHECK(data.columns[0] == "phi");
    for (const auto& row : data.rows) {
        CHECK(row[6] < 1e-12);  // passivity
        CHECK(row[7] < 1e-10);  // unitarity
        CHECK(row[1] >= -1.0);
        CHECK(row[1] <= 1.0);
    }
}

TEST_CASE("reciprocal points: closed and numeric methods coincide") {
    CHECK(checks::reciprocal_sets_worst(4) < 1e-6);
}

TEST_CASE("nested layout with a centered inner block is always reciprocal") {
    const Topology topo{TopologyKind::Nested, Orientation::I, 4, 3, 2};
    const auto closed = reciprocal_points(topo, RootMethod::Closed);
    const auto numeric = reciprocal_points(topo, RootMethod::Numeric);
    CHECK(closed.identically_zero);
    CHECK(numeric.identically_zero);
}

TEST_CASE("strict braided roots are the printed lattice") {
    const auto pts = reciprocal_points(
        {TopologyKind::Braided, Orientation::I, 2, 2}, RootMethod::Numeric);
    REQUIRE(pts.roots.size() == 2);
    CHECK(pts.roots[0] == doctest::Approx(pi / 2).epsilon(1e-8));
    CHECK(pts.roots[1] == doctest::Approx(3 * pi / 2).epsilon(1e-8));
}

TEST_CASE("figure data sets are populated") {
    const auto curves = figure_data(FigureId::F3);
    REQUIRE(curves.size() == 2);
    for (const auto& curve : curves) {
        CHECK(curve.data.rows.size() == 401);
        CHECK_FALSE(curve.label.empty());
    }
}

TEST_CASE("csv output is deterministic and full precision") {
    CurveData data;
    data.columns = {"x", "y"};
    data.comment = "snapshot";
    data.rows = {{0.1, 1.0 / 3.0}, {0.2, 2.0 / 3.0}};
    const std::string p1 = "csv_test_1.csv", p2 = "csv_test_2.csv";
    write_csv(data, p1);
    write_csv(data, p2);
    const std::string text = slurp(p1);
    CHECK(text == slurp(p2));
    CHECK(text.find("# snapshot\n") == 0);
    CHECK(text.find("x,y\n") != std::string::npos);
    CHECK(text.find("0.33333333333333331") != std::string::npos);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}
