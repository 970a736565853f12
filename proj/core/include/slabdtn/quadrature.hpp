#pragma once

#include <functional>
#include <span>

namespace slabdtn {

/// Result of an adaptive quadrature: the value, an error estimate, and the
/// number of integrand evaluations spent.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
};

namespace quad {

struct Options {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_intervals = 200000;
    // When true, failing to reach the tolerance within the interval budget
    // raises std::runtime_error with diagnostics instead of returning.
    bool require_convergence = true;
};

/// Adaptive Gauss-Kronrod 7-15 integration of f over [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const Options& opt = {});

/// Same, but seeded with an initial partition. `breakpoints` must be sorted
/// strictly increasing with at least two entries; integration runs over
/// [front, back]. Useful for oscillatory integrands where the caller knows
/// the oscillation scale.
QuadResult integrate(const std::function<double(double)>& f,
                     std::span<const double> breakpoints,
                     const Options& opt = {});

}  // namespace quad
}  // namespace slabdtn
