#include "tcr/svg_chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace tcr {

namespace {

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (std::isnan(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (lo > hi) lo = 0, hi = 1;
        if (hi - lo <= 0) {
            const double pad = std::max(1.0, std::fabs(hi) * 0.05);
            lo -= pad;
            hi += pad;
        }
    }
};

}  // namespace

std::string render_svg(const LineChart& chart) {
    const double left = 70, right = 190, top = 40, bottom = 50;
    const double plot_w = chart.width - left - right;
    const double plot_h = chart.height - top - bottom;

    Range xr, yr;
    for (double x : chart.x) xr.add(x);
    for (const auto& s : chart.series) {
        for (double v : s.values) yr.add(v);
    }
    xr.finish();
    yr.finish();
    auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(chart.width) << "\" height=\""
      << fixed(chart.height) << "\" viewBox=\"0 0 " << fixed(chart.width) << ' ' << fixed(chart.height)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect x=\"0\" y=\"0\" width=\"" << fixed(chart.width) << "\" height=\"" << fixed(chart.height)
      << "\" fill=\"white\"/>\n";
    s << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(chart.title) << "</text>\n";

    // axes
    s << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(left) << "\" y2=\""
      << fixed(top + plot_h) << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top + plot_h) << "\" x2=\"" << fixed(left + plot_w)
      << "\" y2=\"" << fixed(top + plot_h) << "\" stroke=\"black\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / kTicks;
        const double yv = yr.lo + (yr.hi - yr.lo) * i / kTicks;
        s << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << fixed(top + plot_h + 16)
          << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
        s << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(py(yv) + 4) << "\" text-anchor=\"end\">"
          << tick_label(yv) << "</text>\n";
        s << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(py(yv)) << "\" x2=\"" << fixed(left + plot_w)
          << "\" y2=\"" << fixed(py(yv)) << "\" stroke=\"#e0e0e0\"/>\n";
    }
    s << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"" << fixed(chart.height - 10)
      << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
    s << "<text transform=\"translate(18," << fixed(top + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(chart.y_label) << "</text>\n";

    for (std::size_t i = 0; i < chart.series.size(); ++i) {
        const auto& series = chart.series[i];
        const char* color = kPalette[i % kPalette.size()];
        s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" data-series=\""
          << escape(series.name) << "\" points=\"";
        bool first = true;
        for (std::size_t j = 0; j < series.values.size() && j < chart.x.size(); ++j) {
            if (std::isnan(series.values[j])) continue;
            s << (first ? "" : " ") << fixed(px(chart.x[j])) << ',' << fixed(py(series.values[j]));
            first = false;
        }
        s << "\"/>\n";
        const double ly = top + 10 + 18.0 * static_cast<double>(i);
        const double lx = left + plot_w + 14;
        s << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 20) << "\" y2=\""
          << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << fixed(lx + 26) << "\" y=\"" << fixed(ly + 4) << "\">" << escape(series.name)
          << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace tcr
