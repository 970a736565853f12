#include "slabdtn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace slabdtn::quad {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod abscissae (indices 1,3,5) and the centre.
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    fv[7] = f(c);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        fv[i] = f(c - dx);
        fv[14 - i] = f(c + dx);
    }

    double resk = kWgk[7] * fv[7];
    double resabs = std::abs(resk);
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    }
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 3; ++i)
        resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));

    resasc *= h;
    resabs *= h;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round = 50.0 * 2.2204460492503131e-16 * resabs;
    err = std::max(err, round);

    return Panel{a, b, resk * h, err};
}

QuadResult run(const std::function<double(double)>& f,
               std::span<const double> breaks, const Options& opt) {
    if (breaks.size() < 2)
        throw std::invalid_argument("quad::integrate: need at least two breakpoints");
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i] > breaks[i - 1]))
            throw std::invalid_argument("quad::integrate: breakpoints must be strictly increasing");

    QuadResult out;
    std::priority_queue<Panel> heap;
    double total = 0.0, toterr = 0.0;
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        Panel p = gk15(f, breaks[i - 1], breaks[i]);
        out.evaluations += 15;
        total += p.value;
        toterr += p.error;
        heap.push(p);
    }

    int intervals = static_cast<int>(breaks.size()) - 1;
    auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };

    while (toterr > target() && intervals < opt.max_intervals) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval no longer splittable; put it back and give up
            heap.push(worst);
            break;
        }
        Panel l = gk15(f, worst.a, mid);
        Panel r = gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += l.value + r.value - worst.value;
        toterr += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++intervals;
    }

    out.value = total;
    out.error = toterr;
    if (opt.require_convergence && toterr > target() && toterr > 1e3 * target()) {
        std::ostringstream msg;
        msg << "quad::integrate: no convergence after " << intervals
            << " intervals (value=" << total << ", error=" << toterr
            << ", target=" << target() << ")";
        throw std::runtime_error(msg.str());
    }
    return out;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const Options& opt) {
    const double breaks[2] = {a, b};
    return run(f, breaks, opt);
}

QuadResult integrate(const std::function<double(double)>& f,
                     std::span<const double> breakpoints, const Options& opt) {
    return run(f, breakpoints, opt);
}

}  // namespace slabdtn::quad
