#pragma once

#include <string>
#include <vector>

namespace spamflow::util {

// Dependency-free SVG plots. Output is deterministic text (fixed float
// formatting) so emitted figures can be golden-file compared.
struct SvgPoint {
    double x = 0.0;
    double y = 0.0;
};

std::string svg_line_chart(const std::string& title, const std::vector<SvgPoint>& points);
std::string svg_scatter(const std::string& title, const std::vector<SvgPoint>& points);

// Bars keyed by bin start; `bin_width` in x units.
std::string svg_histogram(const std::string& title, const std::vector<SvgPoint>& bins,
                          double bin_width);

}  // namespace spamflow::util
