#include "slabdtn/gamma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "slabdtn/specfun.hpp"

namespace slabdtn::gamma_lab {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_subcritical(double s, const char* who) {
    if (!(s > 0.0 && s < 0.5))
        throw std::domain_error(std::string(who) +
                                ": requires s in (0, 1/2); the tail diverges otherwise");
}

// int_A^inf cos(w t) t^p dt by parts, for w*A >> 1:
//   C(p) = -sin(wA) A^p / w - p cos(wA) A^{p-1} / w^2 - (p(p-1)/w^2) C(p-2).
// Returns value and a remainder bound.
std::pair<double, double> cosine_moment_tail(double w, double p, double a,
                                             int terms = 8) {
    double value = 0.0, coeff = 1.0, pk = p;
    for (int k = 0; k < terms; ++k) {
        value += coeff * (-std::sin(w * a) * std::pow(a, pk) / w -
                          pk * std::cos(w * a) * std::pow(a, pk - 1.0) / (w * w));
        coeff *= -pk * (pk - 1.0) / (w * w);
        pk -= 2.0;
    }
    const double rem = std::abs(coeff) * std::pow(a, pk + 1.0) / std::abs(pk + 1.0);
    return {value, rem};
}

// Breakpoints for the oscillatory head [0, a]: a fixed grid resolving the
// symbol's own structure near the origin plus >= 8 panels per sin^2 period.
std::vector<double> head_breakpoints(double r, double a) {
    std::vector<double> pts{0.0, 1e-3, 1e-2, 0.1, 0.3};
    const double unit_end = std::min(a, 30.0);
    for (double x = 1.0; x < unit_end; x += 1.0) pts.push_back(x);
    pts.push_back(unit_end);
    const double osc = kPi / (8.0 * r);
    if (osc < a) {
        const std::size_t count = static_cast<std::size_t>(a / osc);
        if (count > 4000000)
            throw std::runtime_error("t_s: oscillation grid too fine (r too large)");
        for (double x = osc; x < a; x += osc) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double x, double y) { return y - x < 1e-14 * (1.0 + y); }),
              pts.end());
    // end exactly at a, keeping a nonzero final panel
    while (pts.size() > 1 && pts.back() > a - 1e-12 * (1.0 + a)) pts.pop_back();
    pts.push_back(a);
    return pts;
}

double simpson(std::span<const double> f, double dx) {
    const std::size_t n = f.size();
    if (n < 2) throw std::invalid_argument("averaging_check: need >= 2 samples");
    double sum = 0.0;
    std::size_t i = 0;
    // composite Simpson over as many sample pairs as possible, trapezoid on a
    // leftover cell when the count is even
    for (; i + 2 < n; i += 2) sum += dx / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    if (i + 1 < n) sum += 0.5 * dx * (f[i] + f[i + 1]);
    return sum;
}

double heteroclinic(double t) { return 0.5 * (1.0 + std::tanh(t)); }

}  // namespace

double indicator_spectrum_sq(const IntervalSpec& spec, double xi) {
    if (!(spec.half_width > 0.0))
        throw std::invalid_argument("indicator_spectrum_sq: half_width must be positive");
    if (xi == 0.0) return 4.0 * spec.half_width * spec.half_width;
    const double sn = std::sin(spec.half_width * xi);
    return 4.0 * sn * sn / (xi * xi);
}

QuadResult t_s(double s, double r, double rel_tol) {
    require_subcritical(s, "t_s");
    if (!(r > 0.0)) throw std::domain_error("t_s: r must be positive");

    const FracParams params = FracParams::from_s(s);
    const double lam = lambda_limit(params);
    const double p = 2.0 * s - 2.0;
    const double a = std::max(30.0, 10.0 / r);  // head end; 2 r a >= 20 always

    auto integrand = [&](double xi) {
        const double sn = std::sin(r * xi);
        return 8.0 * s_tilde(params, xi) * sn * sn * std::pow(xi, p);
    };

    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.max_intervals = 4000000;
    const std::vector<double> breaks = head_breakpoints(r, a);
    QuadResult head = quad::integrate(integrand, breaks, opt);

    // Tail: s_tilde == lam up to ~1e-26 past a >= 30, so
    //   8 lam int_a^inf sin^2(r xi) xi^p dxi
    //     = 4 lam [ a^{p+1}/(-p-1) - int_a^inf cos(2 r xi) xi^p dxi ].
    const double monomial = std::pow(a, p + 1.0) / (-p - 1.0);
    auto [cosint, cosrem] = cosine_moment_tail(2.0 * r, p, a);
    const double tail = 4.0 * lam * (monomial - cosint);
    const double sat_gap = std::max(lam - s_tilde(params, a), 0.0);
    const double tail_err = 4.0 * lam * cosrem + 8.0 * sat_gap * monomial;

    QuadResult out;
    out.value = head.value + tail;
    out.error = head.error + tail_err;
    out.evaluations = head.evaluations;
    return out;
}

QuadResult plateau_constant(double s, double head_cutoff) {
    require_subcritical(s, "plateau_constant");
    if (!(head_cutoff >= 30.0))
        throw std::invalid_argument("plateau_constant: head_cutoff must be >= 30");

    const FracParams params = FracParams::from_s(s);
    const double lam = lambda_limit(params);
    const double p = 2.0 * s - 2.0;

    // 4 int_0^inf s_tilde(xi) xi^{2s-2} dxi; the integrand extends smoothly
    // to 2/(1-s) at 0 (the xi^{2-2s} vanishing of s_tilde cancels the power)
    auto integrand = [&](double xi) {
        return 4.0 * s_tilde(params, xi) * std::pow(xi, p);
    };
    std::vector<double> breaks{0.0, 1e-3, 1e-2, 0.1, 0.3};
    for (double x = 1.0; x < head_cutoff; x += 1.0) breaks.push_back(x);
    breaks.push_back(head_cutoff);
    quad::Options opt;
    opt.rel_tol = 1e-11;
    QuadResult head = quad::integrate(integrand, breaks, opt);

    const double tail = 4.0 * lam * std::pow(head_cutoff, p + 1.0) / (-p - 1.0);
    const double sat_gap = std::max(lam - s_tilde(params, head_cutoff), 0.0);

    QuadResult out;
    out.value = head.value + tail;
    out.error = head.error + 4.0 * sat_gap * std::abs(tail) + 1e-30;
    out.evaluations = head.evaluations;
    return out;
}

double fractional_perimeter_interval(double s, double r) {
    require_subcritical(s, "fractional_perimeter_interval");
    if (!(r > 0.0))
        throw std::domain_error("fractional_perimeter_interval: r must be positive");
    // [chi]^2_{H^s} = (2 C(1,s)^{-1} / (2 pi)) int |xi|^{2s} 4 sin^2(r xi)/xi^2 dxi
    //              = (8 C(1,s)^{-1} / pi) M(s) r^{1-2s},
    // with the classical moment M(s) = int_0^inf sin^2(t) t^{2s-2} dt
    //                               = 2^{-2s} Gamma(2s) sin(pi s) / (1 - 2s).
    const double cinv = 1.0 / c_constant(1, s).value;
    const double moment = std::pow(2.0, -2.0 * s) * specfun::gamma_fn(2.0 * s) *
                          std::sin(kPi * s) / (1.0 - 2.0 * s);
    return 8.0 * cinv / kPi * moment * std::pow(r, 1.0 - 2.0 * s);
}

AveragingCheck averaging_check(std::span<const double> f_samples, double x0,
                               double dx, double omega) {
    if (!(dx > 0.0)) throw std::invalid_argument("averaging_check: dx must be positive");
    std::vector<double> weighted(f_samples.size());
    for (std::size_t j = 0; j < f_samples.size(); ++j) {
        const double sn = std::sin(omega * (x0 + j * dx));
        weighted[j] = f_samples[j] * sn * sn;
    }
    AveragingCheck out;
    out.lhs = simpson(weighted, dx);
    out.rhs = 0.5 * simpson(f_samples, dx);
    out.gap = std::abs(out.lhs - out.rhs);
    return out;
}

Field recovery_sequence(const IntervalSpec& interval, double epsilon,
                        const PeriodicGrid& grid) {
    if (grid.dim != 1)
        throw std::invalid_argument("recovery_sequence: 1D grids only");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("recovery_sequence: epsilon must be positive");
    const double lo = interval.center - interval.half_width;
    const double hi = interval.center + interval.half_width;
    if (lo - 4.0 * epsilon < -0.5 * grid.length ||
        hi + 4.0 * epsilon > 0.5 * grid.length)
        throw std::invalid_argument(
            "recovery_sequence: interval must sit inside the grid with margin >= 4 eps");

    Field out = make_field(grid);
    for (int j = 0; j < grid.samples_per_axis; ++j) {
        const double dist =
            interval.half_width - std::abs(grid.coord(j) - interval.center);
        out.values[j] = heteroclinic(dist / epsilon);
    }
    return out;
}

MinimizeResult minimize_f_epsilon(const Field& initial, FracParams params,
                                  double epsilon, const MinimizeOptions& opts) {
    if (!(opts.step > 0.0))
        throw std::invalid_argument("minimize_f_epsilon: step must be positive");
    for (double v : initial.values)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("minimize_f_epsilon: initial field must lie in [0,1]");

    const double s = params.s();
    const double dxn = initial.grid.cell_volume();
    const double two_pi_n = std::pow(2.0 * kPi, initial.grid.dim);

    auto energy = [&](const Field& u) { return f_epsilon(u, params, epsilon).total; };

    MinimizeResult res;
    res.final_field = initial;
    double e = energy(res.final_field);
    res.energy_history.push_back(e);
    const double eps2s = std::pow(epsilon, 2.0 * s);
    const double weight =
        s < 0.5 ? std::pow(epsilon, -2.0 * s)
                : (s == 0.5 ? 1.0 / std::abs(epsilon * std::log(epsilon))
                            : 1.0 / epsilon);

    double step = opts.step;
    Field candidate = make_field(initial.grid);
    for (int it = 0; it < opts.max_iter; ++it) {
        // gradient of total = weight * dxn * (eps^{2s} 2 (2pi)^n Lu + W'(u))
        Field lu = apply_operator(res.final_field, params, OperatorKind::slab_dtn);
        std::vector<double> grad(lu.values.size());
        for (std::size_t j = 0; j < grad.size(); ++j)
            grad[j] = weight * dxn *
                      (eps2s * 2.0 * two_pi_n * lu.values[j] +
                       double_well_prime(res.final_field.values[j]));

        int backtracks = 0;
        double e_new = e;
        for (;; ++backtracks) {
            if (backtracks > 60) {
                res.iterations = it;
                std::ostringstream msg;
                msg << "minimize_f_epsilon: no descent after 60 backtracks at "
                    << "iteration " << it << " (energy " << e << ", "
                    << res.energy_history.size() << " trace entries)";
                throw std::runtime_error(msg.str());
            }
            for (std::size_t j = 0; j < grad.size(); ++j)
                candidate.values[j] = std::clamp(
                    res.final_field.values[j] - step * grad[j], 0.0, 1.0);
            e_new = energy(candidate);
            if (e_new <= e) break;
            step *= 0.5;
        }
        std::swap(res.final_field.values, candidate.values);
        const double decrease = e - e_new;
        e = e_new;
        res.energy_history.push_back(e);
        res.iterations = it + 1;
        if (decrease <= opts.tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

std::vector<TrendRow> limsup_trend(const IntervalSpec& interval, FracParams params,
                                   std::span<const double> epsilons,
                                   const PeriodicGrid& grid) {
    std::vector<TrendRow> rows;
    rows.reserve(epsilons.size());
    const bool subcritical = params.s() < 0.5;
    const Field indicator =
        subcritical ? make_indicator(grid, interval) : Field{};
    for (double eps : epsilons) {
        const Field u =
            subcritical ? indicator : recovery_sequence(interval, eps, grid);
        rows.push_back(TrendRow{eps, f_epsilon(u, params, eps).total});
    }
    return rows;
}

TsCurve ts_curve(double s, double r_min, double r_max, int points) {
    require_subcritical(s, "ts_curve");
    if (!(r_min > 0.0) || !(r_max > r_min) || points < 2)
        throw std::invalid_argument("ts_curve: need 0 < r_min < r_max and points >= 2");
    TsCurve curve{s, {}};
    curve.rows.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        const double r = r_min * std::pow(r_max / r_min, t);
        QuadResult q = t_s(s, r);
        curve.rows.push_back(TsCurveRow{r, q.value, q.error, q.evaluations});
    }
    return curve;
}

namespace {

void append_double(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string run_to_json(double s, double epsilon, const MinimizeResult& run) {
    std::string out = "{\"s\":";
    append_double(out, s);
    out += ",\"epsilon\":";
    append_double(out, epsilon);
    out += ",\"energy_history\":[";
    for (std::size_t i = 0; i < run.energy_history.size(); ++i) {
        if (i) out += ',';
        append_double(out, run.energy_history[i]);
    }
    out += "],\"converged\":";
    out += run.converged ? "true" : "false";
    out += '}';
    return out;
}

std::string trace_to_json(const MinimizeTrace& trace) {
    if (trace.epsilons.size() != trace.runs.size())
        throw std::invalid_argument("trace_to_json: epsilons/runs size mismatch");
    std::string out = "[";
    for (std::size_t i = 0; i < trace.runs.size(); ++i) {
        if (i) out += ',';
        out += run_to_json(trace.s, trace.epsilons[i], trace.runs[i]);
    }
    out += ']';
    return out;
}

Field make_indicator(const PeriodicGrid& grid, const IntervalSpec& interval) {
    if (grid.dim != 1)
        throw std::invalid_argument("make_indicator: 1D grids only");
    Field out = make_field(grid);
    for (int j = 0; j < grid.samples_per_axis; ++j) {
        const double x = grid.coord(j);
        out.values[j] =
            std::abs(x - interval.center) <= interval.half_width ? 1.0 : 0.0;
    }
    return out;
}

}  // namespace slabdtn::gamma_lab
