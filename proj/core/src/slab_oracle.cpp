#include "slabdtn/slab_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace slabdtn::slab_oracle {
namespace {

struct Mesh {
    std::vector<double> y;        // nodes y_0 = 0 .. y_M = 1
    std::vector<double> conduct;  // conduct[j] couples nodes j-1 and j, j = 1..M
    // exact weighted mass pairings per interval j = 1..M in the local basis
    std::vector<double> mass_ll, mass_lr, mass_rr;
};

// Galerkin scheme in the local basis {1, y^{1-a}}, i.e. P1 elements in the
// flux coordinate z = y^{1-a}. The stiffness is then the harmonic average
// (1-a) / (y1^{1-a} - y0^{1-a}), which carries the flux of both Frobenius
// branches exactly; the mass matrix is integrated in closed form against the
// same basis. A lumped (control-volume) mass is O(y^{1+a}) inconsistent near
// the degenerate edge and stalls the convergence at order (1+a)g/2 for a < 0.
Mesh build_mesh(const ModeProblem& p) {
    const int m = p.mesh_size;
    const double a = p.params.a();
    const double oma = 1.0 - a;

    Mesh mesh;
    mesh.y.resize(m + 1);
    for (int j = 0; j <= m; ++j)
        mesh.y[j] = std::pow(static_cast<double>(j) / m, p.grading);
    mesh.y[m] = 1.0;

    mesh.conduct.assign(m + 1, 0.0);
    mesh.mass_ll.assign(m + 1, 0.0);
    mesh.mass_lr.assign(m + 1, 0.0);
    mesh.mass_rr.assign(m + 1, 0.0);
    for (int j = 1; j <= m; ++j) {
        const double lo = mesh.y[j - 1], hi = mesh.y[j];
        const double zl = std::pow(lo, oma), zr = std::pow(hi, oma);
        const double d = zr - zl;
        mesh.conduct[j] = oma / d;

        // moments of the weight: A0 = int y^a, I2 = int y, G = int y^{2-a}
        const double a0 = (std::pow(hi, 1.0 + a) - std::pow(lo, 1.0 + a)) / (1.0 + a);
        const double i2 = 0.5 * (hi * hi - lo * lo);
        const double g = (std::pow(hi, 3.0 - a) - std::pow(lo, 3.0 - a)) / (3.0 - a);
        const double d2 = d * d;
        mesh.mass_rr[j] = (g - 2.0 * zl * i2 + zl * zl * a0) / d2;
        mesh.mass_lr[j] = ((zr + zl) * i2 - zr * zl * a0 - g) / d2;
        mesh.mass_ll[j] = (zr * zr * a0 - 2.0 * zr * i2 + g) / d2;
    }
    return mesh;
}

// Thomas elimination for the SPD tridiagonal system.
std::vector<double> solve_tridiag(std::vector<double> diag,
                                  const std::vector<double>& off,
                                  std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0)
            throw std::runtime_error("solve_mode: singular tridiagonal system");
        const double w = off[i - 1] / diag[i - 1];
        diag[i] -= w * off[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (rhs[i] - off[i] * x[i + 1]) / diag[i];
    return x;
}

// Neumann extraction: fit v(y1), v(y2) to the local solution basis
//   phi0(y) = 1 + r^2 y^2 / (2(1+a)),   phi1(y) = y^{1-a},
// i.e. the regular Frobenius branch including its first correction plus the
// singular branch, and return -(1-a) B. Without the r^2 correction the
// regular branch's curvature leaks into B at O(y^{1+a}), which is too coarse
// for a < 0.
double extract_dtn(const ModeProblem& p, const Mesh& mesh,
                   const std::vector<double>& v) {
    const double a = p.params.a();
    const double oma = 1.0 - a;
    const double q = p.r * p.r / (2.0 * (1.0 + a));
    const double y1 = mesh.y[1], y2 = mesh.y[2];
    const double p0_1 = 1.0 + q * y1 * y1, p1_1 = std::pow(y1, oma);
    const double p0_2 = 1.0 + q * y2 * y2, p1_2 = std::pow(y2, oma);
    const double det = p0_1 * p1_2 - p0_2 * p1_1;
    const double b = (p0_1 * v[2] - p0_2 * v[1]) / det;
    return -oma * b;
}

}  // namespace

double default_grading(FracParams params) {
    return std::max(1.0, 2.0 / (1.0 - params.a()));
}

ModeProblem ModeProblem::standard(FracParams params, double r, int mesh_size) {
    return ModeProblem{params, r, mesh_size, default_grading(params)};
}

ModeSolution solve_mode(const ModeProblem& problem) {
    if (problem.mesh_size < 16)
        throw std::invalid_argument("solve_mode: mesh_size must be >= 16");
    if (problem.grading < 1.0)
        throw std::invalid_argument("solve_mode: grading must be >= 1");
    if (!(problem.r >= 0.0))
        throw std::invalid_argument("solve_mode: r must be nonnegative");

    const int m = problem.mesh_size;
    const Mesh mesh = build_mesh(problem);
    const double r2 = problem.r * problem.r;

    // unknowns v_1..v_M; v_0 = 1 is the Dirichlet datum, the zero-flux
    // condition at y = 1 is natural for the Galerkin form
    std::vector<double> diag(m), off(m - 1), rhs(m, 0.0);
    for (int j = 1; j <= m; ++j) {
        const double up = (j < m) ? mesh.conduct[j + 1] : 0.0;
        const double mass_diag =
            mesh.mass_rr[j] + (j < m ? mesh.mass_ll[j + 1] : 0.0);
        diag[j - 1] = mesh.conduct[j] + up + r2 * mass_diag;
        if (j < m) off[j - 1] = -mesh.conduct[j + 1] + r2 * mesh.mass_lr[j + 1];
    }
    rhs[0] = mesh.conduct[1] - r2 * mesh.mass_lr[1];

    std::vector<double> interior = solve_tridiag(std::move(diag), off, std::move(rhs));

    ModeSolution sol;
    sol.mesh_size = m;
    sol.values.resize(m + 1);
    sol.values[0] = 1.0;
    for (int j = 1; j <= m; ++j) sol.values[j] = interior[j - 1];
    sol.dtn_value = (problem.r == 0.0) ? 0.0 : extract_dtn(problem, mesh, sol.values);
    return sol;
}

std::vector<ConvergenceRow> convergence_study(FracParams params, double r,
                                              std::span<const int> mesh_sizes) {
    const double exact = s_full(params, r);
    std::vector<ConvergenceRow> rows;
    rows.reserve(mesh_sizes.size());
    for (int m : mesh_sizes) {
        ModeSolution sol = solve_mode(ModeProblem::standard(params, r, m));
        const double err = exact > 0.0 ? std::abs(sol.dtn_value - exact) / exact
                                       : std::abs(sol.dtn_value);
        rows.push_back(ConvergenceRow{m, sol.dtn_value, err});
    }
    return rows;
}

ExtensionField extension_field(FracParams params,
                               std::span<const ModeAmplitude> modes,
                               int mesh_size) {
    ExtensionField out;
    const Mesh mesh =
        build_mesh(ModeProblem::standard(params, 0.0, mesh_size));
    out.mesh = mesh.y;
    for (const ModeAmplitude& mode : modes) {
        if (!std::isfinite(mode.amplitude))
            throw std::invalid_argument("extension_field: amplitude must be finite");
        ModeSolution sol =
            solve_mode(ModeProblem::standard(params, mode.r, mesh_size));
        std::vector<double> scaled(sol.values.size());
        for (std::size_t j = 0; j < scaled.size(); ++j)
            scaled[j] = mode.amplitude * sol.values[j];

        // discrete slab energy 1/2 int y^a (v'^2 + r^2 v^2) with the same
        // stiffness/mass quadratic forms as the solver
        double grad = 0.0, mass = 0.0;
        for (int j = 1; j <= mesh_size; ++j) {
            const double vl = scaled[j - 1], vr = scaled[j];
            const double dv = vr - vl;
            grad += mesh.conduct[j] * dv * dv;
            mass += mesh.mass_ll[j] * vl * vl + 2.0 * mesh.mass_lr[j] * vl * vr +
                    mesh.mass_rr[j] * vr * vr;
        }
        out.mode_energy.push_back(0.5 * (grad + mode.r * mode.r * mass));
        out.values.push_back(std::move(scaled));
    }
    return out;
}

}  // namespace slabdtn::slab_oracle
