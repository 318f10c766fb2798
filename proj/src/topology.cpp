#include "gyro/topology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gyro {

void Topology::validate() const {
    if (n_a < 1 || n_b < 1)
        throw std::invalid_argument("topology: N >= 1 and M >= 1 required");
    switch (kind) {
        case TopologyKind::Separated:
            break;
        case TopologyKind::Nested: {
            if (!nest_index)
                throw std::invalid_argument("topology: nested requires nest_index");
            const int outer = orientation == Orientation::I ? n_a : n_b;
            if (*nest_index < 1 || *nest_index > outer - 1)
                throw std::invalid_argument(
                    "topology: nested requires 1 <= nest_index <= " +
                    std::string(orientation == Orientation::I ? "N-1" : "M-1"));
            break;
        }
        case TopologyKind::Braided:
            if (orientation == Orientation::I && n_b < n_a)
                throw std::invalid_argument("topology: braided (i) requires M >= N");
            if (orientation == Orientation::II && n_a < n_b)
                throw std::invalid_argument("topology: braided (ii) requires N >= M");
            if (orientation == Orientation::I && n_b > n_a && n_a < 2)
                throw std::invalid_argument(
                    "topology: general braided (i) requires N >= 2");
            if (orientation == Orientation::II && n_a > n_b && n_b < 2)
                throw std::invalid_argument(
                    "topology: general braided (ii) requires M >= 2");
            break;
        case TopologyKind::Coincident:
            if (n_a != 1 || n_b != 1)
                throw std::invalid_argument("topology: coincident forces N = M = 1");
            break;
    }
}

PointLayout layout(const Topology& topo) {
    topo.validate();
    const int N = topo.n_a, M = topo.n_b;
    PointLayout lay;
    auto fill_range = [](std::vector<int>& dst, int from, int count) {
        for (int i = 0; i < count; ++i) dst.push_back(from + i);
    };
    switch (topo.kind) {
        case TopologyKind::Separated:
            if (topo.orientation == Orientation::I) {
                fill_range(lay.a_positions, 0, N);
                fill_range(lay.b_positions, N, M);
            } else {
                fill_range(lay.b_positions, 0, M);
                fill_range(lay.a_positions, M, N);
            }
            break;
        case TopologyKind::Nested:
            if (topo.orientation == Orientation::I) {
                const int n = *topo.nest_index;
                fill_range(lay.a_positions, 0, n);
                fill_range(lay.b_positions, n, M);
                fill_range(lay.a_positions, n + M, N - n);
            } else {
                const int m = *topo.nest_index;
                fill_range(lay.b_positions, 0, m);
                fill_range(lay.a_positions, m, N);
                fill_range(lay.b_positions, m + N, M - m);
            }
            break;
        case TopologyKind::Braided:
            if (topo.orientation == Orientation::I) {
                for (int i = 0; i < N; ++i) {
                    lay.a_positions.push_back(2 * i);
                    lay.b_positions.push_back(2 * i + 1);
                }
                fill_range(lay.b_positions, 2 * N, M - N);
            } else {
                for (int i = 0; i < M; ++i) {
                    lay.b_positions.push_back(2 * i);
                    lay.a_positions.push_back(2 * i + 1);
                }
                fill_range(lay.a_positions, 2 * M, N - M);
            }
            break;
        case TopologyKind::Coincident:
            lay.a_positions = {0};
            lay.b_positions = {0};
            break;
    }
    return lay;
}

cplx gamma_sum(const std::vector<int>& h_positions,
               const std::vector<int>& s_positions, double phi, double gamma) {
    cplx total = 0.0;
    for (int h : h_positions) {
        for (int s : s_positions) {
            const int d = h - s;
            if (d < 0) continue;
            const double theta = d == 0 ? 0.5 : 1.0;
            total += theta * expi(phi * d);
        }
    }
    return -gamma * total;
}

Mat2 coupling_matrix_bruteforce(const Topology& topo, double phi, double gamma) {
    const PointLayout lay = layout(topo);
    Mat2 m;
    m(0, 0) = gamma_sum(lay.a_positions, lay.a_positions, phi, gamma);
    m(0, 1) = gamma_sum(lay.a_positions, lay.b_positions, phi, gamma);
    m(1, 0) = gamma_sum(lay.b_positions, lay.a_positions, phi, gamma);
    m(1, 1) = gamma_sum(lay.b_positions, lay.b_positions, phi, gamma);
    return m;
}

namespace {

// Width of the direct-summation branch around the removable singularities of
// the geometric ratios. The closed ratio loses ~eps*K/|1-z| absolute accuracy
// as z -> 1, so a generous window keeps every entry at the 1e-13 level.
constexpr double kSingularTol = 1e-2;

cplx ipow(cplx z, int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

// sum_{s=1}^{K} z^s, geometric form away from z = 1
cplx geo_sum(cplx z, int K) {
    if (K <= 0) return 0.0;
    const cplx one_minus = 1.0 - z;
    if (std::abs(one_minus) < kSingularTol) {
        cplx acc = 0.0, p = 1.0;
        for (int s = 1; s <= K; ++s) {
            p *= z;
            acc += p;
        }
        return acc;
    }
    return z * (1.0 - ipow(z, K)) / one_minus;
}

// sum_{s=1}^{K} (K - s) z^s, arithmetico-geometric form away from z = 1
cplx ramp_sum(cplx z, int K) {
    if (K <= 1) return 0.0;
    const cplx one_minus = 1.0 - z;
    if (std::abs(one_minus) < kSingularTol) {
        cplx acc = 0.0, p = 1.0;
        for (int s = 1; s <= K; ++s) {
            p *= z;
            acc += static_cast<double>(K - s) * p;
        }
        return acc;
    }
    return z * (static_cast<double>(K) * one_minus - (1.0 - ipow(z, K))) /
           (one_minus * one_minus);
}

// sum_{k=1}^{K2} sum_{s=k}^{k+K1-1} z^s = geo(z, K1) geo(z, K2) / z
cplx cross_sum(cplx z, int K1, int K2) {
    if (K1 <= 0 || K2 <= 0) return 0.0;
    if (std::abs(z) < kSingularTol) return 0.0;  // unreachable for unit-modulus z
    return geo_sum(z, K1) * geo_sum(z, K2) / z;
}

Mat2 closed_separated(int N, int M, cplx e) {
    Mat2 m;
    m(0, 0) = static_cast<double>(N) / 2.0 + ramp_sum(e, N);
    m(1, 1) = static_cast<double>(M) / 2.0 + ramp_sum(e, M);
    m(0, 1) = 0.0;
    m(1, 0) = cross_sum(e, N, M);
    return m;
}

Mat2 closed_nested(int N, int M, int n, double phi, cplx e) {
    // orientation I: n of the N a-points sit left of the b block, N - n right
    Mat2 m;
    m(0, 0) = static_cast<double>(N) / 2.0 + ramp_sum(e, n) + ramp_sum(e, N - n) +
              expi(phi * M) * cross_sum(e, n, N - n);
    m(0, 1) = cross_sum(e, M, N - n);
    m(1, 0) = cross_sum(e, n, M);
    m(1, 1) = static_cast<double>(M) / 2.0 + ramp_sum(e, M);
    return m;
}

Mat2 closed_braided(int N, int M, double phi, cplx e) {
    // orientation I with M >= N: interleaved core of N a/b pairs, then a
    // separated tail of M - N extra b points at positions 2N .. N+M-1
    const cplx e2 = e * e;
    const int core = N, tail = M - N;
    Mat2 m;
    m(0, 0) = static_cast<double>(N) / 2.0 + ramp_sum(e2, core);
    m(0, 1) = ramp_sum(e2, core) / e;
    m(1, 0) = ramp_sum(e2, core + 1) / e;
    m(1, 1) = static_cast<double>(M) / 2.0 + ramp_sum(e2, core);
    if (tail > 0) {
        // every tail point lies right of the whole core, so its sums factorize
        const cplx tail_phase = expi(phi * 2.0 * core) * (1.0 + geo_sum(e, tail - 1));
        const cplx over_a = 1.0 + geo_sum(std::conj(e2), core - 1);
        const cplx over_b = std::conj(e) * over_a;
        m(1, 0) += tail_phase * over_a;
        m(1, 1) += ramp_sum(e, tail) + tail_phase * over_b;
    }
    return m;
}

Mat2 mirrored(Mat2 m) {
    std::swap(m.v[0], m.v[3]);
    std::swap(m.v[1], m.v[2]);
    return m;
}

}  // namespace

Mat2 coupling_matrix_closed(const Topology& topo, double phi, double gamma) {
    topo.validate();
    if (topo.kind == TopologyKind::Coincident)
        return coupling_matrix_bruteforce(topo, phi, gamma);

    const cplx e = expi(phi);
    const bool mirror = topo.orientation == Orientation::II;
    const int N = mirror ? topo.n_b : topo.n_a;
    const int M = mirror ? topo.n_a : topo.n_b;

    Mat2 m;
    switch (topo.kind) {
        case TopologyKind::Separated:
            m = closed_separated(N, M, e);
            break;
        case TopologyKind::Nested:
            m = closed_nested(N, M, *topo.nest_index, phi, e);
            break;
        case TopologyKind::Braided:
            m = closed_braided(N, M, phi, e);
            break;
        case TopologyKind::Coincident:
            break;  // handled above
    }
    if (mirror) m = mirrored(m);
    for (auto& z : m.v) z *= -gamma;
    return m;
}

std::string to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::Separated: return "separated";
        case TopologyKind::Nested: return "nested";
        case TopologyKind::Braided: return "braided";
        case TopologyKind::Coincident: return "coincident";
    }
    return "?";
}

std::string to_string(Orientation orientation) {
    return orientation == Orientation::I ? "i" : "ii";
}

std::string serialize(const Topology& topo) {
    std::ostringstream out;
    out << to_string(topo.kind);
    if (topo.kind != TopologyKind::Coincident)
        out << '-' << to_string(topo.orientation);
    out << " N=" << topo.n_a << " M=" << topo.n_b;
    if (topo.nest_index) out << " nest=" << *topo.nest_index;
    return out.str();
}

Topology parse_topology(const std::string& text) {
    std::istringstream in(text);
    std::string head;
    in >> head;
    Topology topo;
    auto kind_of = [](const std::string& s) -> Topology {
        if (s == "separated-i") return {TopologyKind::Separated, Orientation::I};
        if (s == "separated-ii") return {TopologyKind::Separated, Orientation::II};
        if (s == "nested-i") return {TopologyKind::Nested, Orientation::I};
        if (s == "nested-ii") return {TopologyKind::Nested, Orientation::II};
        if (s == "braided-i") return {TopologyKind::Braided, Orientation::I};
        if (s == "braided-ii") return {TopologyKind::Braided, Orientation::II};
        if (s == "coincident")
            return {TopologyKind::Coincident, Orientation::I, 1, 1};
        throw std::invalid_argument("unknown topology token: " + s);
    };
    topo = kind_of(head);
    std::string field;
    while (in >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("malformed topology field: " + field);
        const std::string key = field.substr(0, eq);
        const int value = std::stoi(field.substr(eq + 1));
        if (key == "N") topo.n_a = value;
        else if (key == "M") topo.n_b = value;
        else if (key == "nest") topo.nest_index = value;
        else throw std::invalid_argument("unknown topology field: " + key);
    }
    topo.validate();
    return topo;
}

}  // namespace gyro
