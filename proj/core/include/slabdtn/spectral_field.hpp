#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "slabdtn/quadrature.hpp"
#include "slabdtn/symbol.hpp"

namespace slabdtn {

/// Uniform periodic sampling of [-L/2, L/2)^dim with N samples per axis,
/// N a power of two. The spectral ladder per axis is k_j = 2 pi j / L for
/// j in {-N/2, ..., N/2 - 1}. The torus stands in for R^n: fields of compact
/// support well inside the box see the operator exactly (up to spectral
/// truncation), which the torus-size stability test quantifies.
struct PeriodicGrid {
    int dim = 1;
    double length = 1.0;       // L per axis
    int samples_per_axis = 8;  // N, power of two, >= 8

    static PeriodicGrid make(int dim, double length, int samples_per_axis);

    std::size_t size() const;
    double spacing() const { return length / samples_per_axis; }
    double cell_volume() const;
    double coord(int j) const { return -0.5 * length + j * spacing(); }
    /// Signed frequency of DFT bin index k in [0, N).
    double freq(int k) const;
};

struct Field {
    PeriodicGrid grid;
    std::vector<double> values;  // size grid.size(), row-major for dim = 2
};

Field make_field(const PeriodicGrid& grid);

/// DFT convention: forward is the plain sum without prefactor,
///   F_k = sum_j f_j exp(-2 pi i j.k / N)   (per axis),
/// inverse carries the 1/N^dim. A continuum transform of samples is
/// approximated by |u_hat(xi_k)| ~ cell_volume * |F_k|; every energy formula
/// below carries its own cell-volume and (2 pi)^{-n} factors explicitly.
std::vector<std::complex<double>> dft_forward(const Field& field);
Field dft_inverse(std::span<const std::complex<double>> spectrum,
                  const PeriodicGrid& grid);

enum class OperatorKind { slab_dtn, frac_laplacian };

/// Apply the radial Fourier multiplier S_s(|k|) (slab_dtn) or |k|^{2s}
/// (frac_laplacian) binwise. Both vanish on the zero mode, so the output has
/// zero mean; the multiplier is real and radial, so real input gives real
/// output.
Field apply_operator(const Field& field, FracParams params, OperatorKind which);

/// Discrete slab Dirichlet energy
///   (1/(2 (2 pi)^n)) int S_s(|xi|) |u_hat|^2 dxi,
/// which equals (cell_volume / 2) <u, Lu> exactly in the discrete setting
/// (Plancherel).
double dirichlet_energy(const Field& field, FracParams params);

/// The unweighted interaction integral int S_s(|xi|) |u_hat|^2 dxi, i.e.
/// 2 (2 pi)^n times the Dirichlet energy. This is the interaction term of
/// the rescaled functionals.
double interaction_integral(const Field& field, FracParams params);

/// Squared Gagliardo H^s seminorm in spectral form,
///   (2 C(n,s)^{-1} / (2 pi)^n) int |xi|^{2s} |u_hat|^2 dxi.
double hs_seminorm_sq(const Field& field, FracParams params);

/// The normalising constant C(1,s) = (int_R (1 - cos z)/|z|^{1+2s} dz)^{-1}
/// by adaptive quadrature with a series treatment near 0 and an asymptotic
/// tail. Only dim = 1 is supported (that is where the double-integral
/// cross-check lives); dim = 2 uses the closed form internally.
QuadResult c_constant(int dim, double s);

/// Double-well potential W(t) = t^2 (1-t)^2, extended by even reflection
/// outside [0,1]. W(0) = W(1) = 0, W'(0) = W'(1) = 0, W''(0) = W''(1) = 2.
double double_well(double t);
double double_well_prime(double t);

enum class Regime { subcritical, critical, supercritical };

struct EnergyReport {
    double s = 0.0;
    double epsilon = 0.0;
    double interaction = 0.0;     // int S_s |u_hat|^2
    double potential = 0.0;       // int W(u) dx
    double rescale_weight = 0.0;  // eps^{-2s}, |eps log eps|^{-1}, or eps^{-1}
    Regime regime = Regime::subcritical;
    double total = 0.0;           // rescale_weight * (eps^{2s} interaction + potential)
};

/// The rescaled phase-transition energy F_eps(u). The regime (and with it
/// the rescaling weight) is decided by s alone: eps^{-2s} below s = 1/2,
/// |eps log eps|^{-1} at s = 1/2 (requires eps < 1), eps^{-1} above.
EnergyReport f_epsilon(const Field& field, FracParams params, double epsilon);

const char* regime_name(Regime regime);

/// Field CSV: `# grid: ...` metadata comment, then x,value (or x,y,value)
/// rows at 17 significant digits, lossless on round trip.
void save_field_csv(const Field& field, std::ostream& os);
Field load_field_csv(std::istream& is);

}  // namespace slabdtn
