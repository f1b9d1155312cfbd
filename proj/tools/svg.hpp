#pragma once

#include <string>
#include <vector>

namespace bohm::svg {

struct Series {
    std::vector<std::pair<double, double>> pts;
    std::string color = "#1f4e9c";
    bool dashed = false;
    bool scatter = false;
    std::string label;
};

struct Figure {
    std::string title;
    std::string x_label, y_label;
    bool log_x = false, log_y = false;
    std::vector<Series> series;
    // Optional straight guide y = guide_offset * x^guide_slope (log axes) or
    // y = guide_offset + guide_slope * x (linear axes).
    bool guide = false;
    double guide_slope = 0.0, guide_offset = 0.0;
    std::string legend_extra;
};

// Self-contained SVG; empty data renders bare axes.
void write_figure(const Figure& fig, const std::string& path);

// Filled-cell rendering of a scalar field given as (x, y, value) rows on a
// regular lattice.
void write_heatmap(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& v, const std::string& title,
                   const std::string& path);

}  // namespace bohm::svg
