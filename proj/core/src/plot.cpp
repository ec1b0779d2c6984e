#include <algorithm>
#include <cmath>
#include <cstdio>

#include "segcrawl/errors.hpp"
#include "segcrawl/report.hpp"

namespace segcrawl {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_text(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", std::fabs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
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

}  // namespace

std::string render_plot(std::span<const PlotSeries> series, const PlotOptions& options) {
    if (series.empty()) throw InvalidInputError("emit_plot: no series");
    double x_min = INFINITY, x_max = -INFINITY, y_min = 0.0, y_max = -INFINITY;
    for (const auto& s : series) {
        if (s.points.empty()) throw InvalidInputError("emit_plot: series '" + s.name + "' has no points");
        for (const auto& [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (x_max - x_min < 1e-12) {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if (y_max - y_min < 1e-12) y_max = y_min + 1.0;
    y_max += 0.05 * (y_max - y_min);

    const double left = 70, right = 160, top = 40, bottom = 55;
    const double plot_w = options.width - left - right;
    const double plot_h = options.height - top - bottom;
    auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return top + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
           "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
           std::to_string(options.width) + " " + std::to_string(options.height) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        svg += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
               escape(options.title) + "</text>\n";
    }

    // Axes and ticks.
    svg += "<g stroke=\"#333\" stroke-width=\"1\">\n";
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" + num(left + plot_w) +
           "\" y2=\"" + num(top + plot_h) + "\"/>\n";
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" +
           num(top + plot_h) + "\"/>\n";
    svg += "</g>\n<g fill=\"#333\">\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double xv = x_min + (x_max - x_min) * i / kTicks;
        const double yv = y_min + (y_max - y_min) * i / kTicks;
        svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(top + plot_h + 16) +
               "\" text-anchor=\"middle\">" + tick_text(xv) + "</text>\n";
        svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(yv) + 4) + "\" text-anchor=\"end\">" +
               tick_text(yv) + "</text>\n";
    }
    svg += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"" + num(options.height - 12.0) +
           "\" text-anchor=\"middle\">" + escape(options.x_label) + "</text>\n";
    svg += "<text x=\"16\" y=\"" + num(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num(top + plot_h / 2) + ")\">" + escape(options.y_label) + "</text>\n";
    svg += "</g>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kPalette[i % std::size(kPalette)];
        if (s.points.size() > 1) {
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"";
            for (std::size_t p = 0; p < s.points.size(); ++p) {
                if (p) svg += ' ';
                svg += num(px(s.points[p].first)) + "," + num(py(s.points[p].second));
            }
            svg += "\"/>\n";
        }
        for (const auto& [x, y] : s.points) {
            svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3.5\" fill=\"" + color +
                   "\"/>\n";
        }
        const double ly = top + 10 + 18.0 * static_cast<double>(i);
        const double lx = left + plot_w + 15;
        svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" +
               num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(lx + 26) + "\" y=\"" + num(ly + 4) + "\">" + escape(s.name) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_plot(std::span<const PlotSeries> series, const std::filesystem::path& out,
               const PlotOptions& options) {
    write_text_file(out, render_plot(series, options));
}

}  // namespace segcrawl
