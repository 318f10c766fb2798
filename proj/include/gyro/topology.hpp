#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gyro/types.hpp"

namespace gyro {

enum class TopologyKind { Separated, Nested, Braided, Coincident };
enum class Orientation { I, II };

/* Arrangement of the coupling points of modes a and b_x along the waveguide.
 * Coincident is the traditional single-point system (i): both modes attached
 * at one shared point. Orientation II is the mirror image of I. */
struct Topology {
    TopologyKind kind = TopologyKind::Braided;
    Orientation orientation = Orientation::I;
    int n_a = 2;                        // N, coupling points of mode a
    int n_b = 2;                        // M, coupling points of mode b_x
    std::optional<int> nest_index;      // n (orientation I) or m (II) for Nested

    void validate() const;              // throws std::invalid_argument
    bool strict_braided() const {
        return kind == TopologyKind::Braided && n_a == n_b;
    }
};

/* Integer lattice positions in units of the nearest-neighbor delay tau.
 * The physical delay of point p is p*tau. */
struct PointLayout {
    std::vector<int> a_positions;
    std::vector<int> b_positions;
};

PointLayout layout(const Topology& topo);

/* Effective decay Gamma(phi; h, s) = -gamma sum_i sum_j Theta(h_i - s_j)
 * exp(i phi (h_i - s_j)), Theta(0) = 1/2 (coincident points split their
 * influence), Theta(d<0) = 0 (causal cutoff). */
cplx gamma_sum(const std::vector<int>& h_positions,
               const std::vector<int>& s_positions, double phi, double gamma);

/* Coupling matrix A_g: [[Gamma(a,a), Gamma(a,b)], [Gamma(b,a), Gamma(b,b)]].
 * Entry (0,1) takes h = a positions, s = b positions. */
Mat2 coupling_matrix_bruteforce(const Topology& topo, double phi, double gamma);

/* Same matrix from per-kind closed forms (geometric sums with a summed-series
 * branch near the removable singularities of the geometric ratio). */
Mat2 coupling_matrix_closed(const Topology& topo, double phi, double gamma);

std::string to_string(TopologyKind kind);
std::string to_string(Orientation orientation);

/* Text record round-trip used by the CLI config, e.g.
 * "braided-i N=2 M=3" or "nested-ii N=2 M=3 nest=1". */
std::string serialize(const Topology& topo);
Topology parse_topology(const std::string& text);

}  // namespace gyro
