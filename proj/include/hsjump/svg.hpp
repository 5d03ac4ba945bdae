#pragma once

#include <string>
#include <vector>

namespace hsjump {

// Minimal line-plot emitter (axes + polylines). CSV files are the
// authoritative artifacts; the SVG is a convenience view.
struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
};

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, bool log_x = false,
                    bool log_y = false);

} // namespace hsjump
