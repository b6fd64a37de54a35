#pragma once

#include <string>
#include <vector>

namespace eigenrestrict {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = true;  // false draws a plain line (e.g. a fitted power law)
};

// Static log-log SVG: framed axes, decade ticks, one polyline per series, legend.
// Non-positive or non-finite points are skipped. Output depends only on the inputs.
std::string render_loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                              const std::vector<PlotSeries>& series);

}  // namespace eigenrestrict
