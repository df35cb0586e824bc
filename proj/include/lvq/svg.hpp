// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lvq/util.hpp"

namespace lvq {

inline constexpr const char* kSvgGeneratorComment = "<!-- lvq svg renderer 1 -->";

namespace detail {

struct SvgAxis {
    double lo = 0.0, hi = 1.0;

    double place(double v, double px_lo, double px_hi) const {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return px_lo + t * (px_hi - px_lo);
    }
};

inline SvgAxis spread(std::vector<double> vals) {
    SvgAxis ax;
    if (vals.empty()) return ax;
    ax.lo = *std::min_element(vals.begin(), vals.end());
    ax.hi = *std::max_element(vals.begin(), vals.end());
    if (ax.hi == ax.lo) {
        ax.lo -= 0.5;
        ax.hi += 0.5;
    }
    const double pad = 0.05 * (ax.hi - ax.lo);
    ax.lo -= pad;
    ax.hi += pad;
    return ax;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out.push_back(c);
    }
    return out;
}

} // namespace detail

// Scatter plot of (x, y) points with axis labels and 5 ticks per axis.
inline std::string svg_scatter(const std::vector<double>& xs, const std::vector<double>& ys,
                               const std::string& title, const std::string& x_label,
                               const std::string& y_label) {
    const int W = 520, H = 390;
    const double px0 = 64, px1 = W - 20, py0 = H - 48, py1 = 40;
    const detail::SvgAxis ax = detail::spread(xs);
    const detail::SvgAxis ay = detail::spread(ys);

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"390\" "
         "viewBox=\"0 0 520 390\">\n";
    s += std::string(kSvgGeneratorComment) + "\n";
    s += "<rect x=\"0\" y=\"0\" width=\"520\" height=\"390\" fill=\"white\"/>\n";
    s += "<text x=\"260\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" +
         detail::xml_escape(title) + "</text>\n";
    s += "<rect x=\"" + format_compact(px0) + "\" y=\"" + format_compact(py1) + "\" width=\"" +
         format_compact(px1 - px0) + "\" height=\"" + format_compact(py0 - py1) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = ax.lo + (ax.hi - ax.lo) * i / 4.0;
        const double fy = ay.lo + (ay.hi - ay.lo) * i / 4.0;
        const double px = ax.place(fx, px0, px1);
        const double py = ay.place(fy, py0, py1);
        s += "<line x1=\"" + format_compact(px) + "\" y1=\"" + format_compact(py0) + "\" x2=\"" +
             format_compact(px) + "\" y2=\"" + format_compact(py0 + 4) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + format_compact(px) + "\" y=\"" + format_compact(py0 + 18) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
             format_compact(fx) + "</text>\n";
        s += "<line x1=\"" + format_compact(px0 - 4) + "\" y1=\"" + format_compact(py) +
             "\" x2=\"" + format_compact(px0) + "\" y2=\"" + format_compact(py) +
             "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + format_compact(px0 - 8) + "\" y=\"" + format_compact(py + 3) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" +
             format_compact(fy) + "</text>\n";
    }

    s += "<text x=\"" + format_compact((px0 + px1) / 2) + "\" y=\"" + format_compact(H - 12.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         detail::xml_escape(x_label) + "</text>\n";
    s += "<text x=\"16\" y=\"" + format_compact((py0 + py1) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 16 " +
         format_compact((py0 + py1) / 2) + ")\">" + detail::xml_escape(y_label) + "</text>\n";

    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        s += "<circle cx=\"" + format_compact(ax.place(xs[i], px0, px1)) + "\" cy=\"" +
             format_compact(ay.place(ys[i], py0, py1)) +
             "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.8\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

// Histogram with a fixed bin count.
inline std::string svg_histogram(const std::vector<double>& values, const std::string& title,
                                 const std::string& x_label, int bins = 9) {
    const int W = 520, H = 390;
    const double px0 = 64, px1 = W - 20, py0 = H - 48, py1 = 40;
    const detail::SvgAxis ax = detail::spread(values);

    std::vector<int> counts(std::max(1, bins), 0);
    for (double v : values) {
        int b = static_cast<int>((v - ax.lo) / (ax.hi - ax.lo) * counts.size());
        b = std::clamp(b, 0, static_cast<int>(counts.size()) - 1);
        ++counts[b];
    }
    const int peak = std::max(1, *std::max_element(counts.begin(), counts.end()));

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"390\" "
         "viewBox=\"0 0 520 390\">\n";
    s += std::string(kSvgGeneratorComment) + "\n";
    s += "<rect x=\"0\" y=\"0\" width=\"520\" height=\"390\" fill=\"white\"/>\n";
    s += "<text x=\"260\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" +
         detail::xml_escape(title) + "</text>\n";
    s += "<line x1=\"" + format_compact(px0) + "\" y1=\"" + format_compact(py0) + "\" x2=\"" +
         format_compact(px1) + "\" y2=\"" + format_compact(py0) + "\" stroke=\"black\"/>\n";

    const double bw = (px1 - px0) / static_cast<double>(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double h = (py0 - py1) * counts[b] / static_cast<double>(peak);
        s += "<rect x=\"" + format_compact(px0 + b * bw + 1) + "\" y=\"" +
             format_compact(py0 - h) + "\" width=\"" + format_compact(bw - 2) + "\" height=\"" +
             format_compact(h) + "\" fill=\"steelblue\"/>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double fx = ax.lo + (ax.hi - ax.lo) * i / 4.0;
        const double px = px0 + (px1 - px0) * i / 4.0;
        s += "<text x=\"" + format_compact(px) + "\" y=\"" + format_compact(py0 + 18) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
             format_compact(fx) + "</text>\n";
    }
    s += "<text x=\"" + format_compact((px0 + px1) / 2) + "\" y=\"" + format_compact(H - 12.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         detail::xml_escape(x_label) + "</text>\n";
    s += "</svg>\n";
    return s;
}

} // namespace lvq
