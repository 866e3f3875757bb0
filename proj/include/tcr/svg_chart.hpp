#pragma once

#include <string>
#include <vector>

namespace tcr {

struct ChartSeries {
    std::string name;
    std::vector<double> values;  // NaN entries are skipped
};

struct LineChart {
    std::string title;
    std::string x_label = "round";
    std::string y_label;
    std::vector<double> x;
    std::vector<ChartSeries> series;
    double width = 720;
    double height = 440;
};

/// One <polyline> per series plus axes, ticks and a legend. Output depends
/// only on the chart contents.
std::string render_svg(const LineChart& chart);

}  // namespace tcr
