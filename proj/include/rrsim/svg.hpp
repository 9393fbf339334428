#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "rrsim/csv.hpp"
#include "rrsim/errors.hpp"

namespace rrsim::svg {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

// Minimal static line chart, enough for eyeballing metric and scaling trends.
inline void write_line_chart(const std::string& path, const std::string& title,
                             const std::string& x_label, const std::string& y_label,
                             const std::vector<Series>& series, bool log_x = false,
                             bool log_y = false) {
    const double width = 720, height = 480;
    const double ml = 70, mr = 150, mt = 45, mb = 55;
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b"};

    auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(v) : v; };

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if ((log_x && x <= 0) || (log_y && y <= 0)) continue;
            xmin = std::min(xmin, tx(x));
            xmax = std::max(xmax, tx(x));
            ymin = std::min(ymin, ty(y));
            ymax = std::max(ymax, ty(y));
        }
    }
    if (xmin > xmax || ymin > ymax) throw InputError("chart has no drawable points");
    if (xmax - xmin < 1e-12) xmax = xmin + 1;
    if (ymax - ymin < 1e-12) ymax = ymin + 1;

    auto px = [&](double x) { return ml + (tx(x) - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) {
        return height - mb - (ty(y) - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    std::ofstream out(path);
    if (!out) throw InputError("cannot open file for writing: " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' font-family='sans-serif' font-size='12'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << width / 2 << "' y='22' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";
    // axes
    out << "<line x1='" << ml << "' y1='" << height - mb << "' x2='" << width - mr << "' y2='"
        << height - mb << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << height - mb
        << "' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        double fx = xmin + (xmax - xmin) * i / 5.0;
        double fy = ymin + (ymax - ymin) * i / 5.0;
        double vx = log_x ? std::pow(10.0, fx) : fx;
        double vy = log_y ? std::pow(10.0, fy) : fy;
        double sx = ml + (width - ml - mr) * i / 5.0;
        double sy = height - mb - (height - mt - mb) * i / 5.0;
        out << "<line x1='" << sx << "' y1='" << height - mb << "' x2='" << sx << "' y2='"
            << height - mb + 4 << "' stroke='black'/>\n";
        out << "<text x='" << sx << "' y='" << height - mb + 18 << "' text-anchor='middle'>"
            << csv::format_double(std::round(vx * 100) / 100) << "</text>\n";
        out << "<line x1='" << ml - 4 << "' y1='" << sy << "' x2='" << ml << "' y2='" << sy
            << "' stroke='black'/>\n";
        out << "<text x='" << ml - 8 << "' y='" << sy + 4 << "' text-anchor='end'>"
            << csv::format_double(std::round(vy * 1000) / 1000) << "</text>\n";
    }
    out << "<text x='" << (ml + width - mr) / 2 << "' y='" << height - 12
        << "' text-anchor='middle'>" << x_label << "</text>\n";
    out << "<text x='16' y='" << (mt + height - mb) / 2 << "' text-anchor='middle' transform='rotate(-90 16 "
        << (mt + height - mb) / 2 << ")'>" << y_label << "</text>\n";

    int color = 0;
    for (const auto& s : series) {
        const char* c = palette[color % 6];
        out << "<polyline fill='none' stroke='" << c << "' stroke-width='1.5' points='";
        for (auto [x, y] : s.points) {
            if ((log_x && x <= 0) || (log_y && y <= 0)) continue;
            out << px(x) << "," << py(y) << " ";
        }
        out << "'/>\n";
        double ly = mt + 16.0 * color;
        out << "<line x1='" << width - mr + 10 << "' y1='" << ly << "' x2='" << width - mr + 30
            << "' y2='" << ly << "' stroke='" << c << "' stroke-width='2'/>\n";
        out << "<text x='" << width - mr + 36 << "' y='" << ly + 4 << "'>" << s.name
            << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
}

}  // namespace rrsim::svg
