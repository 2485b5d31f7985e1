#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "netinfer/errors.hpp"
#include "netinfer/harness/csv.hpp"

namespace netinfer {
namespace svg {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

inline const std::vector<std::string>& palette() {
    static const std::vector<std::string> colors = {
        "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
    return colors;
}

struct Frame {
    double left = 70, right = 770, top = 40, bottom = 540;
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

    double x(double v) const {
        return left + (v - x_min) / (x_max - x_min) * (right - left);
    }
    double y(double v) const {
        return bottom - (v - y_min) / (y_max - y_min) * (bottom - top);
    }
};

inline void open_document(std::ofstream& out) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n"
        << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
}

inline void draw_axes(std::ofstream& out, const Frame& f, const std::string& x_label,
                      const std::string& y_label) {
    out << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(f.bottom) << "\" x2=\""
        << num(f.right) << "\" y2=\"" << num(f.bottom) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(f.top) << "\" x2=\"" << num(f.left)
        << "\" y2=\"" << num(f.bottom) << "\" stroke=\"black\"/>\n";
    const int ticks = 5;
    for (int k = 0; k <= ticks; ++k) {
        const double fx = f.x_min + (f.x_max - f.x_min) * k / ticks;
        const double fy = f.y_min + (f.y_max - f.y_min) * k / ticks;
        out << "<line x1=\"" << num(f.x(fx)) << "\" y1=\"" << num(f.bottom) << "\" x2=\""
            << num(f.x(fx)) << "\" y2=\"" << num(f.bottom + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << num(f.x(fx)) << "\" y=\"" << num(f.bottom + 20)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n";
        out << "<line x1=\"" << num(f.left - 5) << "\" y1=\"" << num(f.y(fy)) << "\" x2=\""
            << num(f.left) << "\" y2=\"" << num(f.y(fy)) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << num(f.left - 8) << "\" y=\"" << num(f.y(fy) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
    }
    out << "<text x=\"" << num((f.left + f.right) / 2) << "\" y=\"575\" font-size=\"14\" "
           "text-anchor=\"middle\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << num((f.top + f.bottom) / 2)
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << num((f.top + f.bottom) / 2) << ")\">" << y_label << "</text>\n";
}

}  // namespace svg

// SVG line chart from an aggregate CSV: one polyline per series value, a CI
// band when <y_field minus "_mean"> + "_ci_low"/"_ci_high" columns exist.
// Output bytes are deterministic for identical input.
inline void emit_plot(const std::string& aggregate_csv, const std::string& x_field,
                      const std::string& y_field, const std::string& series_field,
                      const std::string& output_svg) {
    const CsvTable table = read_csv(aggregate_csv);
    const int xi = table.column(x_field);
    const int yi = table.column(y_field);
    const int si = table.column(series_field);
    if (xi < 0) throw ParameterError("emit_plot: unknown field '" + x_field + "'");
    if (yi < 0) throw ParameterError("emit_plot: unknown field '" + y_field + "'");
    if (si < 0) throw ParameterError("emit_plot: unknown field '" + series_field + "'");

    int ci_low_col = -1, ci_high_col = -1;
    const std::string mean_suffix = "_mean";
    if (y_field.size() > mean_suffix.size() &&
        y_field.compare(y_field.size() - mean_suffix.size(), mean_suffix.size(), mean_suffix) == 0) {
        const std::string stem = y_field.substr(0, y_field.size() - mean_suffix.size());
        ci_low_col = table.column(stem + "_ci_low");
        ci_high_col = table.column(stem + "_ci_high");
    }

    struct Point {
        double x, y, lo, hi;
    };
    std::map<std::string, std::vector<Point>> series;
    double x_min = HUGE_VAL, x_max = -HUGE_VAL, y_min = HUGE_VAL, y_max = -HUGE_VAL;
    for (const auto& row : table.rows) {
        Point p{};
        p.x = std::stod(row[static_cast<std::size_t>(xi)]);
        p.y = std::stod(row[static_cast<std::size_t>(yi)]);
        p.lo = ci_low_col >= 0 ? std::stod(row[static_cast<std::size_t>(ci_low_col)]) : p.y;
        p.hi = ci_high_col >= 0 ? std::stod(row[static_cast<std::size_t>(ci_high_col)]) : p.y;
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
        series[row[static_cast<std::size_t>(si)]].push_back(p);
        x_min = std::min(x_min, p.x);
        x_max = std::max(x_max, p.x);
        y_min = std::min({y_min, p.y, p.lo});
        y_max = std::max({y_max, p.y, p.hi});
    }
    if (series.empty()) throw ParameterError("emit_plot: no plottable rows");
    if (x_min == x_max) {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if (y_min == y_max) {
        y_min -= 1.0;
        y_max += 1.0;
    }

    svg::Frame frame;
    frame.x_min = x_min;
    frame.x_max = x_max;
    frame.y_min = y_min - 0.05 * (y_max - y_min);
    frame.y_max = y_max + 0.05 * (y_max - y_min);

    std::ofstream out(output_svg);
    if (!out) throw IoError("emit_plot: cannot open " + output_svg);
    svg::open_document(out);
    svg::draw_axes(out, frame, x_field, y_field);

    int color_index = 0;
    double legend_y = frame.top + 10;
    for (auto& [name, points] : series) {
        std::sort(points.begin(), points.end(),
                  [](const Point& a, const Point& b) { return a.x < b.x; });
        const std::string& color = svg::palette()[static_cast<std::size_t>(color_index) %
                                                  svg::palette().size()];
        ++color_index;

        if (ci_low_col >= 0 && points.size() >= 2) {
            out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\" "
                   "points=\"";
            for (const Point& p : points)
                out << svg::num(frame.x(p.x)) << "," << svg::num(frame.y(p.lo)) << " ";
            for (auto it = points.rbegin(); it != points.rend(); ++it)
                out << svg::num(frame.x(it->x)) << "," << svg::num(frame.y(it->hi)) << " ";
            out << "\"/>\n";
        }
        if (points.size() >= 2) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" "
                   "points=\"";
            for (const Point& p : points)
                out << svg::num(frame.x(p.x)) << "," << svg::num(frame.y(p.y)) << " ";
            out << "\"/>\n";
        }
        for (const Point& p : points)
            out << "<circle cx=\"" << svg::num(frame.x(p.x)) << "\" cy=\""
                << svg::num(frame.y(p.y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";

        out << "<rect x=\"" << svg::num(frame.right - 150) << "\" y=\"" << svg::num(legend_y - 9)
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << svg::num(frame.right - 132) << "\" y=\"" << svg::num(legend_y + 2)
            << "\" font-size=\"12\">" << name << "</text>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
    if (!out) throw IoError("emit_plot: write failed for " + output_svg);
}

// Scatter plot plus per-class histograms of estimator pair values, colored by
// the ground-truth connection status.
inline void emit_scatter(const std::vector<double>& values, const std::vector<int>& truth_labels,
                         const std::string& output_svg) {
    if (values.size() != truth_labels.size() || values.empty())
        throw ParameterError("emit_scatter: values/labels mismatch");

    double v_min = HUGE_VAL, v_max = -HUGE_VAL;
    for (double v : values) {
        v_min = std::min(v_min, v);
        v_max = std::max(v_max, v);
    }
    if (v_min == v_max) {
        v_min -= 1.0;
        v_max += 1.0;
    }

    // left panel: index vs value; right panel: horizontal histograms
    svg::Frame scatter_frame;
    scatter_frame.left = 60;
    scatter_frame.right = 520;
    scatter_frame.x_min = 0;
    scatter_frame.x_max = static_cast<double>(values.size());
    scatter_frame.y_min = v_min - 0.05 * (v_max - v_min);
    scatter_frame.y_max = v_max + 0.05 * (v_max - v_min);

    const int bins = 40;
    std::vector<long> hist0(bins, 0), hist1(bins, 0);
    for (std::size_t k = 0; k < values.size(); ++k) {
        int b = static_cast<int>((values[k] - scatter_frame.y_min) /
                                 (scatter_frame.y_max - scatter_frame.y_min) * bins);
        b = std::clamp(b, 0, bins - 1);
        (truth_labels[k] ? hist1 : hist0)[static_cast<std::size_t>(b)]++;
    }
    long hist_max = 1;
    for (int b = 0; b < bins; ++b)
        hist_max = std::max({hist_max, hist0[static_cast<std::size_t>(b)],
                             hist1[static_cast<std::size_t>(b)]});

    std::ofstream out(output_svg);
    if (!out) throw IoError("emit_scatter: cannot open " + output_svg);
    svg::open_document(out);
    svg::draw_axes(out, scatter_frame, "pair index", "estimate value");

    for (std::size_t k = 0; k < values.size(); ++k) {
        const char* color = truth_labels[k] ? "#d62728" : "#1f77b4";
        out << "<circle cx=\"" << svg::num(scatter_frame.x(static_cast<double>(k))) << "\" cy=\""
            << svg::num(scatter_frame.y(values[k])) << "\" r=\"2\" fill=\"" << color
            << "\" fill-opacity=\"0.6\"/>\n";
    }

    const double hist_left = 560, hist_width = 200;
    const double band = (scatter_frame.bottom - scatter_frame.top) / bins;
    for (int b = 0; b < bins; ++b) {
        const double y = scatter_frame.bottom - (b + 1) * band;
        const double w0 = hist_width * static_cast<double>(hist0[static_cast<std::size_t>(b)]) /
                          static_cast<double>(hist_max);
        const double w1 = hist_width * static_cast<double>(hist1[static_cast<std::size_t>(b)]) /
                          static_cast<double>(hist_max);
        if (hist0[static_cast<std::size_t>(b)] > 0)
            out << "<rect x=\"" << svg::num(hist_left) << "\" y=\"" << svg::num(y) << "\" width=\""
                << svg::num(w0) << "\" height=\"" << svg::num(band * 0.45)
                << "\" fill=\"#1f77b4\" fill-opacity=\"0.7\"/>\n";
        if (hist1[static_cast<std::size_t>(b)] > 0)
            out << "<rect x=\"" << svg::num(hist_left) << "\" y=\"" << svg::num(y + band * 0.5)
                << "\" width=\"" << svg::num(w1) << "\" height=\"" << svg::num(band * 0.45)
                << "\" fill=\"#d62728\" fill-opacity=\"0.7\"/>\n";
    }
    out << "<text x=\"560\" y=\"25\" font-size=\"12\" fill=\"#1f77b4\">disconnected</text>\n"
        << "<text x=\"660\" y=\"25\" font-size=\"12\" fill=\"#d62728\">connected</text>\n";
    out << "</svg>\n";
    if (!out) throw IoError("emit_scatter: write failed for " + output_svg);
}

}  // namespace netinfer
