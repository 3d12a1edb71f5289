#include "mdbscan/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mdbscan/csv.hpp"

namespace mdbscan {

namespace {

constexpr int PALETTE_SIZE = 12;
const char* const PALETTE[PALETTE_SIZE] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
};

constexpr double CANVAS_W = 640.0;
constexpr double CANVAS_H = 480.0;
constexpr double MARGIN = 48.0;

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string svg_string(const Dataset& data, const Labeling& labeling, int dim_x, int dim_y) {
    if (data.size() > 0) {
        if (dim_x < 0 || dim_x >= data.dim || dim_y < 0 || dim_y >= data.dim) {
            throw config_error("plot dimensions (" + std::to_string(dim_x) + ", " +
                               std::to_string(dim_y) + ") out of range for dimension " +
                               std::to_string(data.dim));
        }
        if (static_cast<int>(labeling.label.size()) != data.size()) {
            throw std::invalid_argument("svg: labeling size does not match dataset");
        }
    }

    double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
    if (data.size() > 0) {
        lo_x = hi_x = data.points[0].coords[dim_x];
        lo_y = hi_y = data.points[0].coords[dim_y];
        for (const Point& p : data.points) {
            lo_x = std::min(lo_x, p.coords[dim_x]);
            hi_x = std::max(hi_x, p.coords[dim_x]);
            lo_y = std::min(lo_y, p.coords[dim_y]);
            hi_y = std::max(hi_y, p.coords[dim_y]);
        }
    }
    double span_x = hi_x - lo_x;
    double span_y = hi_y - lo_y;
    if (span_x <= 0.0) span_x = 1.0;
    if (span_y <= 0.0) span_y = 1.0;
    const double pad_x = 0.05 * span_x;
    const double pad_y = 0.05 * span_y;
    lo_x -= pad_x;
    hi_x += pad_x;
    lo_y -= pad_y;
    hi_y += pad_y;
    span_x = hi_x - lo_x;
    span_y = hi_y - lo_y;

    const double plot_w = CANVAS_W - 2.0 * MARGIN;
    const double plot_h = CANVAS_H - 2.0 * MARGIN;
    const auto sx = [&](double x) { return MARGIN + (x - lo_x) / span_x * plot_w; };
    // SVG y grows downward.
    const auto sy = [&](double y) { return CANVAS_H - MARGIN - (y - lo_y) / span_y * plot_h; };

    std::set<int> clusters;
    for (int label : labeling.label) {
        if (label != NOISE) clusters.insert(label);
    }

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(CANVAS_W)
        << "\" height=\"" << fixed(CANVAS_H) << "\" viewBox=\"0 0 " << fixed(CANVAS_W) << ' '
        << fixed(CANVAS_H) << "\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << fixed(CANVAS_W) << "\" height=\""
        << fixed(CANVAS_H) << "\" fill=\"white\"/>\n";

    // Axes.
    out << "  <g class=\"axes\" stroke=\"#333333\" stroke-width=\"1\">\n";
    out << "    <line x1=\"" << fixed(MARGIN) << "\" y1=\"" << fixed(CANVAS_H - MARGIN)
        << "\" x2=\"" << fixed(CANVAS_W - MARGIN) << "\" y2=\"" << fixed(CANVAS_H - MARGIN)
        << "\"/>\n";
    out << "    <line x1=\"" << fixed(MARGIN) << "\" y1=\"" << fixed(MARGIN) << "\" x2=\""
        << fixed(MARGIN) << "\" y2=\"" << fixed(CANVAS_H - MARGIN) << "\"/>\n";
    out << "  </g>\n";
    out << "  <text x=\"" << fixed(CANVAS_W / 2.0) << "\" y=\"" << fixed(CANVAS_H - 12.0)
        << "\" font-size=\"12\" text-anchor=\"middle\">dim " << dim_x << "</text>\n";
    out << "  <text x=\"" << fixed(14.0) << "\" y=\"" << fixed(CANVAS_H / 2.0)
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 " << fixed(14.0)
        << ' ' << fixed(CANVAS_H / 2.0) << ")\">dim " << dim_y << "</text>\n";

    // Points: clusters as filled circles, noise as gray crosses.
    out << "  <g class=\"points\">\n";
    for (int i = 0; i < data.size(); ++i) {
        const double px = sx(data.points[i].coords[dim_x]);
        const double py = sy(data.points[i].coords[dim_y]);
        const int label = labeling.label[i];
        if (label == NOISE) {
            const double r = 3.0;
            out << "    <g class=\"noise\" stroke=\"#999999\" stroke-width=\"1.2\">"
                << "<line x1=\"" << fixed(px - r) << "\" y1=\"" << fixed(py - r) << "\" x2=\""
                << fixed(px + r) << "\" y2=\"" << fixed(py + r) << "\"/>"
                << "<line x1=\"" << fixed(px - r) << "\" y1=\"" << fixed(py + r) << "\" x2=\""
                << fixed(px + r) << "\" y2=\"" << fixed(py - r) << "\"/></g>\n";
        } else {
            out << "    <circle class=\"cluster-" << label << "\" cx=\"" << fixed(px)
                << "\" cy=\"" << fixed(py) << "\" r=\"3.00\" fill=\""
                << PALETTE[label % PALETTE_SIZE] << "\"/>\n";
        }
    }
    out << "  </g>\n";

    // Legend.
    out << "  <g class=\"legend\" font-size=\"11\">\n";
    double ly = MARGIN;
    const double lx = CANVAS_W - MARGIN + 6.0;
    for (int c : clusters) {
        out << "    <circle cx=\"" << fixed(lx) << "\" cy=\"" << fixed(ly) << "\" r=\"4.00\" fill=\""
            << PALETTE[c % PALETTE_SIZE] << "\"/>\n";
        out << "    <text x=\"" << fixed(lx + 8.0) << "\" y=\"" << fixed(ly + 4.0) << "\">"
            << c << "</text>\n";
        ly += 16.0;
    }
    out << "    <g stroke=\"#999999\" stroke-width=\"1.2\"><line x1=\"" << fixed(lx - 3.0)
        << "\" y1=\"" << fixed(ly - 3.0) << "\" x2=\"" << fixed(lx + 3.0) << "\" y2=\""
        << fixed(ly + 3.0) << "\"/><line x1=\"" << fixed(lx - 3.0) << "\" y1=\""
        << fixed(ly + 3.0) << "\" x2=\"" << fixed(lx + 3.0) << "\" y2=\"" << fixed(ly - 3.0)
        << "\"/></g>\n";
    out << "    <text x=\"" << fixed(lx + 8.0) << "\" y=\"" << fixed(ly + 4.0)
        << "\">noise</text>\n";
    out << "  </g>\n";
    out << "</svg>\n";
    return out.str();
}

void write_svg(const std::string& path, const Dataset& data, const Labeling& labeling,
               int dim_x, int dim_y) {
    const std::string doc = svg_string(data, labeling, dim_x, dim_y);
    std::ofstream out(path);
    if (!out) {
        throw input_error("cannot open output file: " + path);
    }
    out << doc;
}

}  // namespace mdbscan
