// Deterministic SVG scatter plots of objective-space dumps: up to four
// series with distinct marker styles, axis labels and a legend. Rendering
// is a pure function of the input points, so files are byte-identical
// across re-runs.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nemo/core.hpp"

namespace nemo {

struct PlotSeries {
    std::string label;
    std::vector<ObjectiveVector> points; // bi-objective
};

namespace detail {

// Pixel coordinates rounded to 1/100 so the emitted text is short and
// reproducible.
inline std::string svg_num(double v) {
    const double r = std::round(v * 100.0) / 100.0;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, r);
    return std::string(buf, res.ptr);
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

// `role` is "pt" for data markers and "key" for legend swatches, so marker
// counts per series can be read off the class attribute.
inline void svg_marker(std::ostream& os, std::size_t series, double x, double y,
                       const char* color, const char* role) {
    const std::string cls = std::string(role) + " s" + std::to_string(series % 4);
    switch (series % 4) {
    case 0:
        os << "<circle class=\"" << cls << "\" cx=\"" << svg_num(x) << "\" cy=\"" << svg_num(y)
           << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        break;
    case 1:
        os << "<rect class=\"" << cls << "\" x=\"" << svg_num(x - 2.6) << "\" y=\""
           << svg_num(y - 2.6) << "\" width=\"5.2\" height=\"5.2\" fill=\"" << color << "\"/>\n";
        break;
    case 2:
        os << "<path class=\"" << cls << "\" d=\"M" << svg_num(x) << " " << svg_num(y - 3.4)
           << " L" << svg_num(x - 3.1) << " " << svg_num(y + 2.2) << " L" << svg_num(x + 3.1)
           << " " << svg_num(y + 2.2) << " Z\" fill=\"" << color << "\"/>\n";
        break;
    default:
        os << "<path class=\"" << cls << "\" d=\"M" << svg_num(x) << " " << svg_num(y - 3.6)
           << " L" << svg_num(x + 3.6) << " " << svg_num(y) << " L" << svg_num(x) << " "
           << svg_num(y + 3.6) << " L" << svg_num(x - 3.6) << " " << svg_num(y) << " Z\" fill=\""
           << color << "\"/>\n";
        break;
    }
}

} // namespace detail

// Renders the scatter. Throws on more than four series or non-2-D points;
// empty series are legal and render as legend entries without markers.
inline std::string render_scatter_svg(const std::vector<PlotSeries>& series) {
    if (series.empty()) throw std::invalid_argument("render_scatter_svg: no series");
    if (series.size() > 4)
        throw std::invalid_argument("render_scatter_svg: at most four series supported");
    static const char* colors[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    const double width = 640, height = 480;
    const double left = 72, right = 618, top = 22, bottom = 430;

    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = max_x;
    for (const PlotSeries& s : series) {
        for (const ObjectiveVector& p : s.points) {
            if (p.size() != 2)
                throw std::invalid_argument("render_scatter_svg: points must be 2-dimensional");
            min_x = std::min(min_x, p[0]);
            max_x = std::max(max_x, p[0]);
            min_y = std::min(min_y, p[1]);
            max_y = std::max(max_y, p[1]);
        }
    }
    if (!(min_x <= max_x)) { // no points at all
        min_x = 0.0;
        max_x = 1.0;
        min_y = 0.0;
        max_y = 1.0;
    }
    if (min_x == max_x) {
        min_x -= 0.5;
        max_x += 0.5;
    }
    if (min_y == max_y) {
        min_y -= 0.5;
        max_y += 0.5;
    }
    auto px = [&](double v) { return left + (v - min_x) / (max_x - min_x) * (right - left); };
    auto py = [&](double v) { return bottom - (v - min_y) / (max_y - min_y) * (bottom - top); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << (right - left)
       << "\" height=\"" << (bottom - top) << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks
    os << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = min_x + (max_x - min_x) * i / 4.0;
        const double fy = min_y + (max_y - min_y) * i / 4.0;
        const double tx = px(fx), ty = py(fy);
        os << "<line x1=\"" << detail::svg_num(tx) << "\" y1=\"" << bottom << "\" x2=\""
           << detail::svg_num(tx) << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << detail::svg_num(tx) << "\" y=\"" << bottom + 18
           << "\" text-anchor=\"middle\">" << detail::svg_num(fx) << "</text>\n";
        os << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::svg_num(ty) << "\" x2=\"" << left
           << "\" y2=\"" << detail::svg_num(ty) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << left - 8 << "\" y=\"" << detail::svg_num(ty + 4)
           << "\" text-anchor=\"end\">" << detail::svg_num(fy) << "</text>\n";
    }
    os << "</g>\n";

    // axis labels
    os << "<g class=\"axis-labels\" font-family=\"sans-serif\" font-size=\"13\" "
          "fill=\"black\">\n";
    os << "<text x=\"" << detail::svg_num((left + right) / 2) << "\" y=\"" << bottom + 40
       << "\" text-anchor=\"middle\">Objective 1</text>\n";
    os << "<text x=\"18\" y=\"" << detail::svg_num((top + bottom) / 2)
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << detail::svg_num((top + bottom) / 2) << ")\">Objective 2</text>\n";
    os << "</g>\n";

    // data series
    for (std::size_t s = 0; s < series.size(); ++s) {
        os << "<g class=\"series\" data-label=\"" << detail::xml_escape(series[s].label)
           << "\">\n";
        for (const ObjectiveVector& p : series[s].points)
            detail::svg_marker(os, s, px(p[0]), py(p[1]), colors[s], "pt");
        os << "</g>\n";
    }

    // legend
    os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const double ly = top + 16 + 18 * static_cast<double>(s);
        detail::svg_marker(os, s, left + 14, ly - 4, colors[s], "key");
        os << "<text x=\"" << left + 26 << "\" y=\"" << detail::svg_num(ly) << "\">"
           << detail::xml_escape(series[s].label) << "</text>\n";
    }
    os << "</g>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace nemo
