#pragma once

#include <string>
#include <vector>

#include "gyro/sensing.hpp"

namespace gyro {

enum class SweepVariable { Phi, Omega, Cooperativity };
enum class ExecutionPolicy { Serial, Parallel };

struct SweepSpec {
    SweepVariable variable = SweepVariable::Phi;
    std::vector<double> grid;          // strictly increasing
    SystemParams params;
    SystemLayout layout = Topology{};
    DriveConfig drive;
    bool with_sensitivity = true;      // finite differences cost extra solves

    void validate() const;
};

struct CurveData {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string comment;               // parameter snapshot for the CSV header
};

/* Evaluates linear response and sensing per grid point. The parallel policy
 * distributes grid points over OpenMP threads; results are written by index,
 * so both policies produce identical output. */
CurveData sweep(const SweepSpec& spec,
                ExecutionPolicy policy = ExecutionPolicy::Parallel);

enum class RootMethod { Closed, Numeric };

struct ReciprocalPoints {
    std::vector<double> roots;         // phi values in (0, 2 pi), sorted
    bool identically_zero = false;     // sigma(0) vanishes for every phi
};

/* Phases where destructive interference restores reciprocity, sigma(0) = 0.
 * The closed method evaluates the per-kind analytic conditions; the numeric
 * method scans sigma(0), bisects sign changes, and refines tangential zeros. */
ReciprocalPoints reciprocal_points(const Topology& topo, RootMethod method);

struct NamedCurve {
    std::string label;
    CurveData data;
};

enum class FigureId { F3, F4, F5, F6, F7, F8, F9, F10, F11, F12 };

/* Sweep data underlying the survey figures, in the reference scenario
 * kappa = 10 gamma_x, gamma_x = gamma_y, Omega = 0.5 gamma_x, r = 1,
 * theta = 0, Delta = omega = 0. */
std::vector<NamedCurve> figure_data(FigureId id);

/* Reference scenario parameters at the given cooperativity. */
SystemParams reference_params(double co);

void write_csv(const CurveData& data, const std::string& path);

}  // namespace gyro
