#include "slabdtn/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "slabdtn/specfun.hpp"

namespace slabdtn {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 FFT. Twiddles are computed fresh per stage (n-1 trig
// evaluations in total), which keeps the round-trip error near machine
// precision for the sizes used here.
void fft_radix2(std::complex<double>* a, std::size_t n, bool inverse) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j |= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<std::complex<double>> tw(n / 2);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const std::size_t half = len / 2;
        for (std::size_t j = 0; j < half; ++j)
            tw[j] = std::polar(1.0, ang * static_cast<double>(j));
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + half] * tw[j];
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) a[i] *= scale;
    }
}

void fft_nd(std::vector<std::complex<double>>& data, const PeriodicGrid& grid,
            bool inverse) {
    const std::size_t n = grid.samples_per_axis;
    if (grid.dim == 1) {
        fft_radix2(data.data(), n, inverse);
        return;
    }
    // rows (contiguous), then columns via gather/scatter
    for (std::size_t row = 0; row < n; ++row)
        fft_radix2(data.data() + row * n, n, inverse);
    std::vector<std::complex<double>> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) col[r] = data[r * n + c];
        fft_radix2(col.data(), n, inverse);
        for (std::size_t r = 0; r < n; ++r) data[r * n + c] = col[r];
    }
}

void check_field(const Field& field) {
    if (field.values.size() != field.grid.size())
        throw std::invalid_argument("field: value count does not match grid");
}

double bin_radius(const PeriodicGrid& grid, std::size_t flat) {
    if (grid.dim == 1) return std::abs(grid.freq(static_cast<int>(flat)));
    const int n = grid.samples_per_axis;
    const double kx = grid.freq(static_cast<int>(flat) / n);
    const double ky = grid.freq(static_cast<int>(flat) % n);
    return std::hypot(kx, ky);
}

// Spectral quadratic form sum_k m(|k|) |F_k|^2, scaled to approximate
// int m(|xi|) |u_hat(xi)|^2 dxi = L^n / N^{2n} * sum (up to the caller's
// constants).
template <class Multiplier>
double spectral_quadratic(const Field& field, Multiplier&& mult) {
    check_field(field);
    const auto spectrum = dft_forward(field);
    double sum = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double w = mult(bin_radius(field.grid, k));
        sum += w * std::norm(spectrum[k]);
    }
    const double n_axis = field.grid.samples_per_axis;
    const double ratio = field.grid.length / (n_axis * n_axis);
    return std::pow(ratio, field.grid.dim) * sum;
}

double c_ns_closed(int dim, double s) {
    // C(n,s) = s 4^s Gamma((n+2s)/2) / (pi^{n/2} Gamma(1-s))
    using specfun::gamma_fn;
    return s * std::pow(4.0, s) * gamma_fn(0.5 * (dim + 2.0 * s)) /
           (std::pow(kPi, 0.5 * dim) * gamma_fn(1.0 - s));
}

// int_A^inf cos(w t) t^p dt by repeated integration by parts; valid when
// w*A is large:
//   C(p) = -sin(wA) A^p / w - p cos(wA) A^{p-1} / w^2 - (p(p-1)/w^2) C(p-2).
// Returns the value and a bound on the truncation remainder.
std::pair<double, double> cosine_tail(double w, double p, double a, int terms) {
    double value = 0.0;
    double coeff = 1.0;
    double pk = p;
    for (int k = 0; k < terms; ++k) {
        value += coeff * (-std::sin(w * a) * std::pow(a, pk) / w -
                          pk * std::cos(w * a) * std::pow(a, pk - 1.0) / (w * w));
        coeff *= -pk * (pk - 1.0) / (w * w);
        pk -= 2.0;
    }
    // remainder = coeff * int_A^inf cos(w t) t^{pk} dt, |.| <= |coeff| A^{pk+1}/|pk+1|
    const double rem = std::abs(coeff) * std::pow(a, pk + 1.0) / std::abs(pk + 1.0);
    return {value, rem};
}

}  // namespace

PeriodicGrid PeriodicGrid::make(int dim, double length, int samples_per_axis) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("PeriodicGrid: dim must be 1 or 2");
    if (!(length > 0.0))
        throw std::invalid_argument("PeriodicGrid: length must be positive");
    if (!power_of_two(samples_per_axis) || samples_per_axis < 8)
        throw std::invalid_argument("PeriodicGrid: N must be a power of two, >= 8");
    return PeriodicGrid{dim, length, samples_per_axis};
}

std::size_t PeriodicGrid::size() const {
    std::size_t n = samples_per_axis;
    return dim == 1 ? n : n * n;
}

double PeriodicGrid::cell_volume() const {
    return std::pow(spacing(), dim);
}

double PeriodicGrid::freq(int k) const {
    const int n = samples_per_axis;
    const int signed_idx = k < n / 2 ? k : k - n;
    return 2.0 * kPi * signed_idx / length;
}

Field make_field(const PeriodicGrid& grid) {
    return Field{grid, std::vector<double>(grid.size(), 0.0)};
}

std::vector<std::complex<double>> dft_forward(const Field& field) {
    check_field(field);
    std::vector<std::complex<double>> data(field.values.begin(), field.values.end());
    fft_nd(data, field.grid, false);
    return data;
}

Field dft_inverse(std::span<const std::complex<double>> spectrum,
                  const PeriodicGrid& grid) {
    if (spectrum.size() != grid.size())
        throw std::invalid_argument("dft_inverse: spectrum size does not match grid");
    std::vector<std::complex<double>> data(spectrum.begin(), spectrum.end());
    fft_nd(data, grid, true);
    Field out = make_field(grid);
    for (std::size_t i = 0; i < data.size(); ++i) out.values[i] = data[i].real();
    return out;
}

Field apply_operator(const Field& field, FracParams params, OperatorKind which) {
    check_field(field);
    auto spectrum = dft_forward(field);
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double r = bin_radius(field.grid, k);
        const double mult = which == OperatorKind::slab_dtn
                                ? s_full(params, r)
                                : frac_laplacian_symbol(params, r);
        spectrum[k] *= mult;
    }
    return dft_inverse(spectrum, field.grid);
}

double dirichlet_energy(const Field& field, FracParams params) {
    // (1/(2(2pi)^n)) int S|u_hat|^2 dxi; the (2pi)^n from dxi = (2pi/L)^n
    // cancels the prefactor, leaving exactly half the discrete quadratic form
    const double sum = spectral_quadratic(
        field, [&](double r) { return s_full(params, r); });
    return 0.5 * sum;
}

double interaction_integral(const Field& field, FracParams params) {
    const double sum = spectral_quadratic(
        field, [&](double r) { return s_full(params, r); });
    return std::pow(2.0 * kPi, field.grid.dim) * sum;
}

double hs_seminorm_sq(const Field& field, FracParams params) {
    const double s = params.s();
    const double sum = spectral_quadratic(
        field, [&](double r) { return frac_laplacian_symbol(params, r); });
    return 2.0 / c_ns_closed(field.grid.dim, s) * sum;
}

QuadResult c_constant(int dim, double s) {
    if (dim != 1)
        throw std::invalid_argument("c_constant: only dim = 1 is implemented");
    if (!(s > 0.0 && s < 1.0))
        throw std::domain_error("c_constant: s must lie in (0, 1)");

    // C(1,s)^{-1} = 2 int_0^inf (1 - cos z) z^{-1-2s} dz, split as
    // series on [0, delta], adaptive quadrature on [delta, R], tail by parts.
    const double delta = 0.5, cut = 100.0 * kPi;
    double head = 0.0, term_scale = 1.0;
    // int_0^delta: sum_m (-1)^{m+1} delta^{2m-2s} / ((2m)! (2m-2s))
    double fact = 1.0;
    for (int m = 1; m <= 30; ++m) {
        fact *= (2.0 * m - 1.0) * (2.0 * m);
        const double t = std::pow(delta, 2.0 * m - 2.0 * s) /
                         (fact * (2.0 * m - 2.0 * s));
        head += (m % 2 == 1 ? t : -t);
        if (t < 1e-18 * std::abs(head)) break;
        term_scale = t;
    }

    quad::Options opt;
    opt.rel_tol = 1e-12;
    std::vector<double> breaks;
    for (double b = delta; b < cut; b += kPi) breaks.push_back(b);
    breaks.push_back(cut);
    QuadResult mid = quad::integrate(
        [&](double z) { return (1.0 - std::cos(z)) * std::pow(z, -1.0 - 2.0 * s); },
        breaks, opt);

    const double tail_monomial = std::pow(cut, -2.0 * s) / (2.0 * s);
    auto [tail_cos, tail_rem] = cosine_tail(1.0, -1.0 - 2.0 * s, cut, 6);

    QuadResult out;
    out.value = 2.0 * (head + mid.value + tail_monomial - tail_cos);
    out.error = 2.0 * (mid.error + tail_rem + term_scale * 1e-15);
    out.evaluations = mid.evaluations;
    out.value = 1.0 / out.value;  // the constant is the reciprocal integral
    out.error = out.error * out.value * out.value;
    return out;
}

double double_well(double t) {
    if (t < 0.0) t = -t;
    else if (t > 1.0) t = 2.0 - t;
    const double u = t * (1.0 - t);
    return u * u;
}

double double_well_prime(double t) {
    double sign = 1.0;
    if (t < 0.0) {
        t = -t;
        sign = -1.0;
    } else if (t > 1.0) {
        t = 2.0 - t;
        sign = -1.0;
    }
    return sign * 2.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
}

EnergyReport f_epsilon(const Field& field, FracParams params, double epsilon) {
    check_field(field);
    if (!(epsilon > 0.0))
        throw std::invalid_argument("f_epsilon: epsilon must be positive");
    const double s = params.s();
    if (s == 0.5 && epsilon >= 1.0)
        throw std::invalid_argument("f_epsilon: epsilon must be < 1 at s = 1/2 (log degeneracy)");

    EnergyReport rep;
    rep.s = s;
    rep.epsilon = epsilon;
    rep.interaction = interaction_integral(field, params);

    double pot = 0.0;
    for (double v : field.values) pot += double_well(v);
    rep.potential = pot * field.grid.cell_volume();

    if (s < 0.5) {
        rep.regime = Regime::subcritical;
        rep.rescale_weight = std::pow(epsilon, -2.0 * s);
    } else if (s == 0.5) {
        rep.regime = Regime::critical;
        rep.rescale_weight = 1.0 / std::abs(epsilon * std::log(epsilon));
    } else {
        rep.regime = Regime::supercritical;
        rep.rescale_weight = 1.0 / epsilon;
    }
    rep.total = rep.rescale_weight *
                (std::pow(epsilon, 2.0 * s) * rep.interaction + rep.potential);
    return rep;
}

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::subcritical: return "subcritical";
        case Regime::critical: return "critical";
        case Regime::supercritical: return "supercritical";
    }
    return "unknown";
}

void save_field_csv(const Field& field, std::ostream& os) {
    check_field(field);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", field.grid.length);
    os << "# grid: dim=" << field.grid.dim << " N=" << field.grid.samples_per_axis
       << " L=" << buf << "\n";
    const int n = field.grid.samples_per_axis;
    if (field.grid.dim == 1) {
        os << "x,value\n";
        for (int j = 0; j < n; ++j) {
            char x[64], v[64];
            std::snprintf(x, sizeof x, "%.17g", field.grid.coord(j));
            std::snprintf(v, sizeof v, "%.17g", field.values[j]);
            os << x << ',' << v << '\n';
        }
    } else {
        os << "x,y,value\n";
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                char x[64], y[64], v[64];
                std::snprintf(x, sizeof x, "%.17g", field.grid.coord(i));
                std::snprintf(y, sizeof y, "%.17g", field.grid.coord(j));
                std::snprintf(v, sizeof v, "%.17g",
                              field.values[static_cast<std::size_t>(i) * n + j]);
                os << x << ',' << y << ',' << v << '\n';
            }
    }
}

Field load_field_csv(std::istream& is) {
    std::string line;
    int dim = 0, n = 0;
    double length = 0.0;
    bool have_grid = false;
    std::vector<double> values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            int d, nn;
            double ll;
            if (std::sscanf(line.c_str(), "# grid: dim=%d N=%d L=%lf", &d, &nn, &ll) == 3) {
                dim = d;
                n = nn;
                length = ll;
                have_grid = true;
            }
            continue;
        }
        if (line.find("value") != std::string::npos && line.find(',') != std::string::npos &&
            values.empty() && line.find_first_of("0123456789") == std::string::npos)
            continue;  // header
        const std::size_t last = line.rfind(',');
        if (last == std::string::npos)
            throw std::runtime_error("load_field_csv: malformed row: " + line);
        values.push_back(std::strtod(line.c_str() + last + 1, nullptr));
    }
    if (!have_grid)
        throw std::runtime_error("load_field_csv: missing '# grid:' metadata");
    Field out = make_field(PeriodicGrid::make(dim, length, n));
    if (values.size() != out.values.size())
        throw std::runtime_error("load_field_csv: row count does not match grid");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::runtime_error("load_field_csv: non-finite sample");
    out.values = std::move(values);
    return out;
}

}  // namespace slabdtn
