#include "swell/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace swell {

namespace {

const char* kPalette[] = {"#4053d3", "#ddb310", "#b51d14", "#00beff", "#fb49b0",
                          "#00b25d", "#cacaca", "#5d5d5d", "#7a3a00"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void emit_svg(const std::vector<Panel>& panels, const std::string& path) {
    bool any = false;
    for (const auto& p : panels)
        for (const auto& s : p.series)
            if (!s.points.empty()) any = true;
    if (panels.empty() || !any) throw std::invalid_argument("emit_svg: nothing to plot");

    const int pw = 360, ph = 260, margin = 40;
    const int cols = panels.size() > 1 ? 2 : 1;
    const int rows = static_cast<int>((panels.size() + cols - 1) / cols);
    const int width = cols * pw, height = rows * ph;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_svg: cannot write '" + path + "'");

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const Panel& panel = panels[pi];
        const int ox = static_cast<int>(pi % cols) * pw;
        const int oy = static_cast<int>(pi / cols) * ph;

        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
        double ymin = xmin, ymax = -xmin;
        for (const auto& s : panel.series)
            for (const auto& [x, y] : s.points) {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        if (!(xmax > xmin)) xmax = xmin + 1.0;
        if (!(ymax > ymin)) ymax = ymin + 1.0;

        const double sx = (pw - 2.0 * margin) / (xmax - xmin);
        const double sy = (ph - 2.0 * margin) / (ymax - ymin);
        const auto px = [&](double x) { return ox + margin + (x - xmin) * sx; };
        const auto py = [&](double y) { return oy + ph - margin - (y - ymin) * sy; };

        out << "<rect x=\"" << ox + margin << "\" y=\"" << oy + margin << "\" width=\""
            << pw - 2 * margin << "\" height=\"" << ph - 2 * margin
            << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << ox + pw / 2 << "\" y=\"" << oy + margin - 10
            << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
            << panel.title << "</text>\n";
        out << "<text x=\"" << ox + margin << "\" y=\"" << oy + ph - margin + 16
            << "\" font-size=\"10\" font-family=\"sans-serif\">" << fmt(xmin) << "</text>\n";
        out << "<text x=\"" << ox + pw - margin << "\" y=\"" << oy + ph - margin + 16
            << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
            << fmt(xmax) << "</text>\n";
        out << "<text x=\"" << ox + margin - 4 << "\" y=\"" << oy + ph - margin
            << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
            << fmt(ymin) << "</text>\n";
        out << "<text x=\"" << ox + margin - 4 << "\" y=\"" << oy + margin + 4
            << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">"
            << fmt(ymax) << "</text>\n";

        for (std::size_t si = 0; si < panel.series.size(); ++si) {
            const Series& s = panel.series[si];
            if (s.points.empty()) continue;
            const std::string color =
                !s.color.empty() ? s.color
                                 : kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.2\" points=\"";
            for (const auto& [x, y] : s.points) out << fmt(px(x)) << "," << fmt(py(y)) << " ";
            out << "\"/>\n";
        }
    }
    out << "</svg>\n";
    if (!out.good()) throw std::runtime_error("emit_svg: write failed for '" + path + "'");
}

} // namespace swell
