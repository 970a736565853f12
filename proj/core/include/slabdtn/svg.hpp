#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slabdtn/table.hpp"

namespace slabdtn {

enum class AxisScale { linear, log };

/// A straight guide line of fixed slope through the first data point, drawn
/// in the plot's coordinate system (so with two log axes a `slope` of m is
/// the power law y ~ x^m).
struct SlopeGuide {
    double slope;
    std::string label;
};

struct PlotSpec {
    std::string x_column;
    std::vector<std::string> y_columns;  // one polyline per entry
    AxisScale x_scale = AxisScale::linear;
    AxisScale y_scale = AxisScale::linear;
    std::vector<SlopeGuide> guides;
    std::string title;
};

/// Render the selected table columns as a standalone SVG 1.1 document.
/// Log axes require strictly positive data in the plotted columns.
std::string render_svg(const Table& table, const PlotSpec& spec);

}  // namespace slabdtn
