#pragma once

#include <span>
#include <string>
#include <vector>

#include "slabdtn/spectral_field.hpp"

namespace slabdtn::gamma_lab {

/// A finite interval given by its center and half-width h (length 2h).
struct IntervalSpec {
    double center = 0.0;
    double half_width = 1.0;
};

/// Squared Fourier modulus of the interval indicator, 4 sin^2(h xi) / xi^2,
/// continuously extended by its limit 4 h^2 at xi = 0. Depends only on the
/// half-width, never on the center.
double indicator_spectrum_sq(const IntervalSpec& spec, double xi);

/// The interval energy of the nonlocal Gamma-limit as a function of size,
///   T_s(r) = 4 int_R s_tilde(xi) sin^2(r xi) / |xi|^{2-2s} dxi,
/// for s in (0, 1/2). Behaves like C1 r^{1-2s} as r -> 0 and converges to
/// plateau_constant(s) as r -> infinity. The oscillation is resolved with at
/// least 8 panels per period and the tail past the head cutoff is summed by
/// parts analytically; the panel budget supports r up to ~5e5.
QuadResult t_s(double s, double r, double rel_tol = 1e-7);

/// Large-size limit of T_s: 2 int_R s_tilde(xi) / |xi|^{2-2s} dxi, finite for
/// s < 1/2. `head_cutoff` is where quadrature hands over to the analytic
/// tail; doubling it must not move the value beyond the error estimate.
QuadResult plateau_constant(double s, double head_cutoff = 40.0);

/// H^s seminorm squared of the interval indicator of half-width r (the
/// fractional perimeter comparator). Exactly homogeneous:
/// value(r) = r^{1-2s} value(1).
double fractional_perimeter_interval(double s, double r);

struct AveragingCheck {
    double lhs;  // quadrature of f(eta) sin^2(omega eta)
    double rhs;  // half the quadrature of f
    double gap;  // |lhs - rhs|
};

/// Oscillatory averaging on a uniform grid: as omega grows,
/// int f sin^2(omega .) tends to (1/2) int f. Samples are f(x0 + j dx);
/// composite Simpson is used on the sample grid.
AveragingCheck averaging_check(std::span<const double> f_samples, double x0,
                               double dx, double omega);

/// Phase-field approximation of the interval indicator: the heteroclinic
/// profile (1 + tanh(t))/2 evaluated at signed-distance / epsilon. Requires
/// the interval to sit inside the grid with margin >= 4 epsilon.
Field recovery_sequence(const IntervalSpec& interval, double epsilon,
                        const PeriodicGrid& grid);

struct MinimizeOptions {
    double step = 1.0;
    int max_iter = 2000;
    double tol = 1e-10;  // stop when the energy decrease falls below this
};

struct MinimizeResult {
    Field final_field;
    std::vector<double> energy_history;  // nonincreasing, starts at E(initial)
    int iterations = 0;
    bool converged = false;
};

/// Projected gradient descent on F_eps over fields clamped to [0,1].
/// Backtracking halves the step whenever a move would increase the energy,
/// so the recorded history is nonincreasing by construction.
MinimizeResult minimize_f_epsilon(const Field& initial, FracParams params,
                                  double epsilon, const MinimizeOptions& opts = {});

struct TrendRow {
    double epsilon;
    double f_eps;
};

/// F_eps along the regime's recovery construction: the constant indicator
/// sequence for s < 1/2 (F_eps is then epsilon-independent), the heteroclinic
/// profile u_eps for s >= 1/2 (F_eps stabilises as eps -> 0).
std::vector<TrendRow> limsup_trend(const IntervalSpec& interval, FracParams params,
                                   std::span<const double> epsilons,
                                   const PeriodicGrid& grid);

struct TsCurveRow {
    double r;
    double value;
    double error;
    long evaluations;
};

struct TsCurve {
    double s;
    std::vector<TsCurveRow> rows;
};

TsCurve ts_curve(double s, double r_min, double r_max, int points);

/// Full record of a sequence of minimisation runs at decreasing epsilon.
struct MinimizeTrace {
    double s;
    std::vector<double> epsilons;
    std::vector<MinimizeResult> runs;
};

/// JSON for one run: {"s":..., "epsilon":..., "energy_history":[...], "converged":...}
std::string run_to_json(double s, double epsilon, const MinimizeResult& run);
/// JSON array of run objects.
std::string trace_to_json(const MinimizeTrace& trace);

/// Exact indicator field of an interval on a 1D grid (values in {0,1}).
Field make_indicator(const PeriodicGrid& grid, const IntervalSpec& interval);

}  // namespace slabdtn::gamma_lab
