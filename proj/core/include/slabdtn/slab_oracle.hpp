#pragma once

#include <span>
#include <vector>

#include "slabdtn/symbol.hpp"

namespace slabdtn::slab_oracle {

/// One Fourier mode of the slab extension problem: find v on [0,1] with
///   (y^a v')' = r^2 y^a v,   v(0) = 1,   v'(1) = 0,
/// discretised by conservative finite differences on the graded mesh
/// y_j = (j/M)^g. The weighted Neumann value -lim_{y->0} y^a v'(y) recovers
/// the symbol S_s(r) with no Bessel functions involved.
struct ModeProblem {
    FracParams params;
    double r;        // mode frequency, >= 0
    int mesh_size;   // M >= 16
    double grading;  // g >= 1

    static ModeProblem standard(FracParams params, double r, int mesh_size);
};

struct ModeSolution {
    std::vector<double> values;  // v at y_0..y_M, values[0] == 1
    double dtn_value;            // extracted weighted Neumann value, >= 0
    int mesh_size;
};

/// Mesh grading that resolves the singular solution branch y^{1-a}:
/// g = max(1, 2/(1-a)) = max(1, 1/s).
double default_grading(FracParams params);

ModeSolution solve_mode(const ModeProblem& problem);

struct ConvergenceRow {
    int mesh_size;
    double dtn_value;
    double error_vs_symbol;  // |dtn - S_s(r)| / S_s(r) (absolute error at r = 0)
};

/// Solve one mode at a ladder of mesh sizes and report the error against the
/// closed-form symbol.
std::vector<ConvergenceRow> convergence_study(FracParams params, double r,
                                              std::span<const int> mesh_sizes);

struct ModeAmplitude {
    double r;
    double amplitude;
};

/// Extension of a finite superposition of modes, solved mode by mode on a
/// common mesh, with the discrete slab Dirichlet energy of every mode. The
/// energy of mode (r, A) converges to S_s(r) A^2 / 2 as the mesh refines.
struct ExtensionField {
    std::vector<std::vector<double>> values;  // [mode][node]
    std::vector<double> mode_energy;          // discrete 1/2 int y^a (v'^2 + r^2 v^2)
    std::vector<double> mesh;                 // shared nodes y_0..y_M
};

ExtensionField extension_field(FracParams params,
                               std::span<const ModeAmplitude> modes,
                               int mesh_size);

}  // namespace slabdtn::slab_oracle
