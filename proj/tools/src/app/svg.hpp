#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace acemd::app {

struct PlotPoint {
    double x;
    double y;
};

struct PlotLayer {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<PlotPoint> points;
    double radius = 1.5;
    double opacity = 0.4;
    bool as_line = false;  ///< polyline through the points instead of dots
};

/// Static log-log scatter with decade gridlines and a legend. Nonpositive
/// coordinates are dropped.
void write_loglog_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, std::span<const PlotLayer> layers);

}  // namespace acemd::app
