#include "slabdtn/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace slabdtn::specfun {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos coefficients for g = 7, n = 9 (Godfrey's classic double set).
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7};

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

double gamma_positive(double x) {
    // valid for x >= 0.5
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

double switch_point(double nu) { return std::max(15.0, 10.0 + nu * nu); }

// Ascending series I_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k (x^2/4)^k / (k! (nu+1)_k).
// All terms are positive for nu > -1, so there is no cancellation.
double series_unscaled(double nu, double x) {
    const double pref = std::pow(0.5 * x, nu) / gamma_positive(nu + 1.0);
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return pref * sum;
}

// Large-argument expansion of e^{-x} I_nu(x), truncated at its smallest term.
double asymptotic_scaled(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * x * k);
        if (std::abs(term) >= prev) break;  // divergent tail reached
        sum += term;
        prev = std::abs(term);
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

void check_argument(double nu, double x) {
    if (std::isnan(x) || x < 0.0)
        throw std::domain_error("bessel_i: argument must be nonnegative");
    if (x == 0.0 && nu < 0.0)
        throw std::domain_error("bessel_i: x = 0 invalid for negative order");
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
    if (!(nu > -1.0 && nu < 2.0))
        throw std::domain_error("BesselOrder: order must lie in (-1, 2)");
}

double gamma_fn(double x) {
    if (std::isnan(x) || is_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at nonpositive integer");
    if (x < 0.5)
        return kPi / (std::sin(kPi * x) * gamma_positive(1.0 - x));
    return gamma_positive(x);
}

double bessel_i(BesselOrder order, double x) {
    const double nu = order.value();
    check_argument(nu, x);
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (x <= switch_point(nu)) return series_unscaled(nu, x);
    return asymptotic_scaled(nu, x) * std::exp(x);
}

ScaledBessel bessel_i_scaled(BesselOrder order, double x) {
    const double nu = order.value();
    if (!(x > 0.0))
        throw std::domain_error("bessel_i_scaled: argument must be positive");
    if (x <= switch_point(nu))
        return ScaledBessel{series_unscaled(nu, x) * std::exp(-x), x};
    return ScaledBessel{asymptotic_scaled(nu, x), x};
}

double bessel_ratio(BesselOrder nu_num, BesselOrder nu_den, double x) {
    if (!(x > 0.0))
        throw std::domain_error("bessel_ratio: argument must be positive");
    const double num = bessel_i_scaled(nu_num, x).value_scaled;
    const double den = bessel_i_scaled(nu_den, x).value_scaled;
    return num / den;
}

}  // namespace slabdtn::specfun
