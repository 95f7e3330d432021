#include "spamflow/util/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace spamflow::util {

namespace {

constexpr double width = 720.0;
constexpr double height = 420.0;
constexpr double margin = 60.0;

struct Scale {
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;

    double sx(double x) const {
        const double span = x_max > x_min ? x_max - x_min : 1.0;
        return margin + (x - x_min) / span * (width - 2 * margin);
    }
    double sy(double y) const {
        const double span = y_max > y_min ? y_max - y_min : 1.0;
        return height - margin - (y - y_min) / span * (height - 2 * margin);
    }
};

Scale fit(const std::vector<SvgPoint>& points, double extra_x = 0.0) {
    Scale s;
    if (points.empty()) return s;
    s.x_min = s.x_max = points.front().x;
    s.y_min = s.y_max = points.front().y;
    for (const auto& p : points) {
        s.x_min = std::min(s.x_min, p.x);
        s.x_max = std::max(s.x_max, p.x + extra_x);
        s.y_min = std::min(s.y_min, p.y);
        s.y_max = std::max(s.y_max, p.y);
    }
    s.y_min = std::min(s.y_min, 0.0);
    return s;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string header(const std::string& title) {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"420\" "
           "viewBox=\"0 0 720 420\">\n";
    out += "<rect width=\"720\" height=\"420\" fill=\"white\"/>\n";
    out += "<text x=\"360\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
           "font-family=\"sans-serif\">" + title + "</text>\n";
    return out;
}

std::string axes(const Scale& s) {
    std::string out;
    out += "<line x1=\"" + num(margin) + "\" y1=\"" + num(height - margin) + "\" x2=\"" +
           num(width - margin) + "\" y2=\"" + num(height - margin) +
           "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(margin) + "\" y1=\"" + num(margin) + "\" x2=\"" + num(margin) +
           "\" y2=\"" + num(height - margin) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(margin) + "\" y=\"" + num(height - margin + 16) +
           "\" font-size=\"11\" font-family=\"sans-serif\">" + num(s.x_min) + "</text>\n";
    out += "<text x=\"" + num(width - margin) + "\" y=\"" + num(height - margin + 16) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + num(s.x_max) +
           "</text>\n";
    out += "<text x=\"" + num(margin - 6) + "\" y=\"" + num(height - margin) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + num(s.y_min) +
           "</text>\n";
    out += "<text x=\"" + num(margin - 6) + "\" y=\"" + num(margin) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + num(s.y_max) +
           "</text>\n";
    return out;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::vector<SvgPoint>& points) {
    const Scale s = fit(points);
    std::string out = header(title) + axes(s);
    if (!points.empty()) {
        out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i) out += ' ';
            out += num(s.sx(points[i].x)) + "," + num(s.sy(points[i].y));
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string svg_scatter(const std::string& title, const std::vector<SvgPoint>& points) {
    const Scale s = fit(points);
    std::string out = header(title) + axes(s);
    for (const auto& p : points) {
        out += "<circle cx=\"" + num(s.sx(p.x)) + "\" cy=\"" + num(s.sy(p.y)) +
               "\" r=\"2.5\" fill=\"firebrick\" fill-opacity=\"0.6\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string svg_histogram(const std::string& title, const std::vector<SvgPoint>& bins,
                          double bin_width) {
    const Scale s = fit(bins, bin_width);
    std::string out = header(title) + axes(s);
    for (const auto& b : bins) {
        const double x0 = s.sx(b.x);
        const double x1 = s.sx(b.x + bin_width);
        const double y0 = s.sy(b.y);
        const double y1 = s.sy(0.0);
        out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" +
               num(std::max(0.5, x1 - x0 - 1.0)) + "\" height=\"" + num(std::max(0.0, y1 - y0)) +
               "\" fill=\"steelblue\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace spamflow::util
