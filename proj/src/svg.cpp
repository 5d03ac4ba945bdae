#include "hsjump/svg.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace hsjump {

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, bool log_x, bool log_y) {
    const int W = 720, H = 480, M = 56;
    auto tx = [log_x](double v) { return log_x ? std::log10(v) : v; };
    auto ty = [log_y](double v) { return log_y ? std::log10(v) : v; };
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) ymax = ymin + 1;
    auto px = [&](double v) { return M + (tx(v) - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto py = [&](double v) { return H - M - (ty(v) - ymin) / (ymax - ymin) * (H - 2 * M); };

    const auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='14'>" << title
        << "</text>\n";
    out << "<line x1='" << M << "' y1='" << H - M << "' x2='" << W - M << "' y2='" << H - M
        << "' stroke='black'/>\n";
    out << "<line x1='" << M << "' y1='" << M << "' x2='" << M << "' y2='" << H - M
        << "' stroke='black'/>\n";
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    int ci = 0;
    for (const auto& s : series) {
        out << "<polyline fill='none' stroke='" << colors[ci % 5] << "' points='";
        for (size_t i = 0; i < s.x.size(); ++i) out << px(s.x[i]) << "," << py(s.y[i]) << " ";
        out << "'/>\n";
        out << "<text x='" << W - M + 4 << "' y='" << M + 16 * ci << "' font-size='11' fill='"
            << colors[ci % 5] << "'>" << s.label << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

} // namespace hsjump
