// Test-only oracles, kept independent of the implementation paths they check:
// long-double ascending series for I_nu, the complex-plane Bessel J series,
// a truncated large-argument expansion, Richardson/Romberg integration, and
// the brute-force double-sum Gagliardo seminorm.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace oracles {

inline long double bessel_i_series_ld(long double nu, long double x,
                                      int terms = 80) {
    const long double pref = powl(x / 2, nu) / tgammal(nu + 1);
    long double sum = 1, term = 1;
    const long double q = x * x / 4;
    for (int k = 1; k < terms; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
    }
    return pref * sum;
}

// e^{-x} I_nu(x) from the first `terms` correction terms of the divergent
// large-argument expansion.
inline long double bessel_i_scaled_asymptotic(long double nu, long double x,
                                              int terms = 4) {
    const long double mu = 4 * nu * nu;
    long double sum = 1, term = 1;
    for (int k = 1; k <= terms; ++k) {
        term *= -(mu - (2 * k - 1) * (2 * k - 1)) / (8 * x * k);
        sum += term;
    }
    return sum / sqrtl(2 * static_cast<long double>(M_PIl) * x);
}

// J_nu(z) for complex z by the ascending series (principal branch of z^nu).
inline std::complex<double> bessel_j_complex(double nu, std::complex<double> z,
                                             int terms = 90) {
    const std::complex<double> half = 0.5 * z;
    const std::complex<double> pref =
        std::exp(nu * std::log(half)) / std::tgamma(nu + 1.0);
    std::complex<double> sum = 1.0, term = 1.0;
    const std::complex<double> q = half * half;
    for (int k = 1; k < terms; ++k) {
        term *= -q / (static_cast<double>(k) * (nu + k));
        sum += term;
    }
    return pref * sum;
}

// The reduced symbol evaluated on the complex-plane route,
// c1(s) J_{1-s}(-i r) / J_{s-1}(-i r), with no real-form reduction applied.
inline std::complex<double> s_tilde_complex(double s, double r) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> c1 =
        i * std::pow(std::complex<double>(0.5, -0.5), 4.0 * s - 2.0) *
        (std::tgamma(1.0 - s) / std::tgamma(s));
    const std::complex<double> z = -i * r;
    return c1 * bessel_j_complex(1.0 - s, z) / bessel_j_complex(s - 1.0, z);
}

// Romberg integration on [a, b]; plenty for the smooth oracle integrands.
inline double romberg(const std::function<double(double)>& f, double a, double b,
                      int levels = 18, double tol = 1e-13) {
    std::vector<double> row(levels, 0.0), prev(levels, 0.0);
    double h = b - a;
    prev[0] = 0.5 * h * (f(a) + f(b));
    long n = 1;
    for (int k = 1; k < levels; ++k) {
        h *= 0.5;
        n *= 2;
        double sum = 0.0;
        for (long j = 1; j < n; j += 2) sum += f(a + j * h);
        row[0] = 0.5 * prev[0] + h * sum;
        double pow4 = 1.0;
        for (int m = 1; m <= k; ++m) {
            pow4 *= 4.0;
            row[m] = row[m - 1] + (row[m - 1] - prev[m - 1]) / (pow4 - 1.0);
        }
        if (k > 3 && std::abs(row[k] - prev[k - 1]) <= tol * std::abs(row[k]))
            return row[k];
        std::swap(row, prev);
    }
    return prev[levels - 1];
}

// Brute-force Gagliardo double sum sum_{i != j} (u_i - u_j)^2 / |x_i - x_j|^{1+2s} dx^2
// over the sample box.
inline double hs_double_sum(std::span<const double> u, double dx, double s) {
    const std::size_t n = u.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double du = u[i] - u[j];
            if (du == 0.0) continue;
            const double d = dx * static_cast<double>(j - i);
            sum += du * du / std::pow(d, 1.0 + 2.0 * s);
        }
    }
    return 2.0 * sum * dx * dx;
}

inline double central_difference(const std::function<double(double)>& f, double x,
                                 double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracles
