#pragma once

#include <string>
#include <vector>

namespace omsync {

// Deterministic static plots: identical input produces byte-identical output.
// Three layouts cover the reporting needs: line plots (error/ratio vs time,
// with optional horizontal guide lines), phase portraits colored by a fourth
// variable, and multi-panel stacks of either.

struct svg_series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    // Optional per-sample values mapped onto a color gradient (phase portraits
    // colored by a fourth state variable). Empty = fixed palette color.
    std::vector<double> color_by;
};

struct svg_panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<svg_series> series;
    std::vector<double> h_lines;  // horizontal guides (e.g. a target ratio)
};

struct svg_style {
    int width = 720;              // per panel, px
    int height = 400;
    int max_points_per_series = 4000;  // uniform-stride downsampling cap
};

// Panels are stacked vertically into one document.
std::string render_svg(const std::vector<svg_panel>& panels, const svg_style& style = {});

} // namespace omsync
