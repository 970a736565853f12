#pragma once

#include <vector>

#include "slabdtn/quadrature.hpp"

namespace slabdtn {

/// The nonlocality parameter of the slab problem. Holds s in (0,1); the
/// weight exponent a = 1 - 2s is always derived from s, so the two can never
/// drift apart.
class FracParams {
  public:
    static FracParams from_s(double s);  // throws std::domain_error unless 0 < s < 1
    static FracParams from_a(double a);  // a in (-1, 1)

    double s() const noexcept { return s_; }
    double a() const noexcept { return 1.0 - 2.0 * s_; }

  private:
    explicit FracParams(double s) noexcept : s_(s) {}
    double s_;
};

enum class Spacing { linear, logarithmic };

struct SymbolSample {
    double r;         // radial frequency |xi|
    double s_tilde;   // reduced symbol, bounded by lambda_limit(s)
    double s_full;    // r^{2s} * s_tilde
    double ds_tilde;  // radial derivative of the reduced symbol
};

struct SymbolTable {
    FracParams params;
    Spacing spacing;
    double r_min, r_max;
    std::vector<SymbolSample> rows;
};

/// Large-frequency limit of the reduced symbol: 2^{1-2s} Gamma(1-s)/Gamma(s).
/// Equals 1 at s = 1/2.
double lambda_limit(FracParams params);

/// Reduced Dirichlet-to-Neumann symbol of the unit slab,
///   s_tilde(r) = lambda(s) * I_{1-s}(r) / I_{s-1}(r),
/// with s_tilde(0) = 0. Increases from 0 to lambda_limit(s); equals tanh(r)
/// at s = 1/2. Behaves like r^{2-2s} / (2(1-s)) near 0.
double s_tilde(FracParams params, double r);

/// Full symbol S_s(r) = r^{2s} * s_tilde(r): ~ r^2/(2(1-s)) for small r and
/// ~ lambda(s) r^{2s} for large r.
double s_full(FracParams params, double r);

/// Radial derivative of the reduced symbol in closed form,
///   s_tilde'(r) = 2^{2-2s} / (Gamma(s)^2 r I_{s-1}(r)^2),
/// strictly positive for r > 0. Decays like e^{-2r}, so the returned double
/// underflows to 0 past r ~ 370.
double ds_tilde(FracParams params, double r);

/// Fourier symbol of the fractional Laplacian, r^{2s} (the large-frequency
/// asymptote of the slab symbol, up to the constant lambda_limit).
double frac_laplacian_symbol(FracParams params, double r);

/// The finite correction integral separating the slab energy from the
/// fractional one:
///   omega_{n-1} * int_0^inf (lambda(s) - s_tilde(r)) r^{n-1+2s} dr,
/// i.e. the integral over R^n of (lambda(s) - s_tilde(|xi|)) |xi|^{2s}.
/// The integrand is nonnegative, so the value is positive and finite for all
/// s in (0,1). dim must be 1 or 2. At s = 1/2, dim = 1 the value is pi^2/12.
QuadResult correction_constant(FracParams params, int dim);

/// Sample the symbol on a grid of `points` frequencies between r_min and
/// r_max (inclusive), spaced linearly or geometrically.
SymbolTable tabulate(FracParams params, double r_min, double r_max, int points,
                     Spacing spacing);

}  // namespace slabdtn
