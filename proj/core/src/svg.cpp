#include "slabdtn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace slabdtn {
namespace {

constexpr double kWidth = 880, kHeight = 560;
constexpr double kLeft = 82, kRight = 24, kTop = 36, kBottom = 64;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Axis {
    AxisScale scale;
    double lo = 0.0, hi = 1.0;  // in transformed units (log10 for log scale)

    double transform(double v) const {
        if (scale == AxisScale::log) {
            if (!(v > 0.0))
                throw std::invalid_argument("render_svg: log axis requires positive data");
            return std::log10(v);
        }
        return v;
    }
    void widen(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::vector<double> ticks() const {
        std::vector<double> t;
        if (scale == AxisScale::log) {
            for (double d = std::ceil(lo); d <= std::floor(hi) + 1e-9; d += 1.0)
                t.push_back(d);
            if (t.size() > 12) {  // thin out dense decade ticks
                std::vector<double> thin;
                const std::size_t stride = (t.size() + 11) / 12;
                for (std::size_t i = 0; i < t.size(); i += stride) thin.push_back(t[i]);
                t = thin;
            }
            if (t.empty()) t = {lo, hi};
        } else {
            for (int i = 0; i <= 4; ++i) t.push_back(lo + (hi - lo) * i / 4.0);
        }
        return t;
    }
    std::string tick_label(double t) const {
        return scale == AxisScale::log ? num(std::pow(10.0, t)) : num(t);
    }
};

}  // namespace

std::string render_svg(const Table& table, const PlotSpec& spec) {
    if (table.rows.empty())
        throw std::invalid_argument("render_svg: table has no rows");
    if (spec.y_columns.empty())
        throw std::invalid_argument("render_svg: no y columns selected");

    const std::size_t xi = table.column_index(spec.x_column);
    std::vector<std::size_t> yi;
    for (const std::string& c : spec.y_columns) yi.push_back(table.column_index(c));

    Axis xa{spec.x_scale}, ya{spec.y_scale};
    xa.lo = ya.lo = std::numeric_limits<double>::infinity();
    xa.hi = ya.hi = -std::numeric_limits<double>::infinity();
    for (const auto& row : table.rows) {
        xa.widen(xa.transform(row[xi]));
        for (std::size_t c : yi) ya.widen(ya.transform(row[c]));
    }
    if (!(xa.hi > xa.lo)) xa.hi = xa.lo + 1.0;
    if (!(ya.hi > ya.lo)) ya.hi = ya.lo + 1.0;
    const double ypad = 0.05 * (ya.hi - ya.lo);
    ya.lo -= ypad;
    ya.hi += ypad;

    auto px = [&](double t) {
        return kLeft + (t - xa.lo) / (xa.hi - xa.lo) * (kWidth - kLeft - kRight);
    };
    auto py = [&](double t) {
        return kHeight - kBottom -
               (t - ya.lo) / (ya.hi - ya.lo) * (kHeight - kTop - kBottom);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth
        << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // frame and ticks
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
        << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : xa.ticks()) {
        const double x = px(t);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << kHeight - kBottom
            << "\" x2=\"" << num(x) << "\" y2=\"" << kHeight - kBottom + 6
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << num(x) << "\" y=\"" << kHeight - kBottom + 22
            << "\" font-size=\"13\" text-anchor=\"middle\">" << xa.tick_label(t)
            << "</text>\n";
    }
    for (double t : ya.ticks()) {
        const double y = py(t);
        svg << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << num(y) << "\" x2=\""
            << kLeft << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 10 << "\" y=\"" << num(y + 4)
            << "\" font-size=\"13\" text-anchor=\"end\">" << ya.tick_label(t)
            << "</text>\n";
    }

    // axis labels and title
    svg << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\""
        << kHeight - 18 << "\" font-size=\"15\" text-anchor=\"middle\">"
        << esc(spec.x_column) << "</text>\n";
    std::string ylabel;
    for (std::size_t i = 0; i < spec.y_columns.size(); ++i)
        ylabel += (i ? ", " : "") + spec.y_columns[i];
    svg << "<text x=\"20\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" font-size=\"15\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << (kTop + kHeight - kBottom) / 2 << ")\">" << esc(ylabel) << "</text>\n";
    if (!spec.title.empty())
        svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" font-size=\"16\" "
            << "text-anchor=\"middle\">" << esc(spec.title) << "</text>\n";

    // slope guides, anchored at the first row's point of the first series
    for (const SlopeGuide& g : spec.guides) {
        const double x0 = xa.transform(table.rows.front()[xi]);
        const double y0 = ya.transform(table.rows.front()[yi.front()]);
        const double y_at_hi = y0 + g.slope * (xa.hi - x0);
        svg << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(y0))
            << "\" x2=\"" << num(px(xa.hi)) << "\" y2=\"" << num(py(y_at_hi))
            << "\" stroke=\"#888888\" stroke-dasharray=\"6,4\"/>\n";
        if (!g.label.empty())
            svg << "<text x=\"" << num(px(xa.hi) - 6) << "\" y=\""
                << num(py(y_at_hi) - 6)
                << "\" font-size=\"12\" fill=\"#666666\" text-anchor=\"end\">"
                << esc(g.label) << "</text>\n";
    }

    // one polyline per series, plus a small legend
    for (std::size_t sidx = 0; sidx < yi.size(); ++sidx) {
        const char* color = kPalette[sidx % 6];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.6\" points=\"";
        for (const auto& row : table.rows)
            svg << num(px(xa.transform(row[xi]))) << ','
                << num(py(ya.transform(row[yi[sidx]]))) << ' ';
        svg << "\"/>\n";
        svg << "<text x=\"" << kWidth - kRight - 8 << "\" y=\""
            << kTop + 18 + 16 * sidx << "\" font-size=\"13\" fill=\"" << color
            << "\" text-anchor=\"end\">" << esc(spec.y_columns[sidx])
            << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace slabdtn
