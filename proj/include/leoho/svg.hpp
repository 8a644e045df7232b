#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace leoho::svg {

struct Curve {
    std::string label;
    std::vector<std::pair<double, double>> points;
    // Draw as a right-continuous staircase instead of a polyline.
    bool step = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    int width = 720;
    int height = 440;
};

std::string render_plot(const PlotSpec& spec, std::span<const Curve> curves);

}  // namespace leoho::svg
