#include "oracle_recon/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "oracle_recon/util.hpp"

namespace oracle_recon {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 48;

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double place(double v, double pix_lo, double pix_hi) const {
        double a = lo, b = hi, x = v;
        if (log) {
            a = std::log10(a);
            b = std::log10(b);
            x = std::log10(x);
        }
        if (b == a) return (pix_lo + pix_hi) / 2.0;
        return pix_lo + (x - a) / (b - a) * (pix_hi - pix_lo);
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            const int e0 = static_cast<int>(std::floor(std::log10(lo)));
            const int e1 = static_cast<int>(std::ceil(std::log10(hi)));
            for (int e = e0; e <= e1; ++e) {
                const double t = std::pow(10.0, e);
                if (t >= lo * 0.999 && t <= hi * 1.001) out.push_back(t);
            }
            if (out.empty()) out = {lo, hi};
            return out;
        }
        const double span = hi - lo;
        if (span <= 0.0) return {lo};
        const double raw = span / 5.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double candidate : {1.0, 2.0, 5.0, 10.0}) {
            if (mag * candidate >= raw) {
                step = mag * candidate;
                break;
            }
        }
        for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step)
            out.push_back(t);
        return out;
    }
};

std::string escape_xml(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

void expand(Axis& axis, double v) {
    axis.lo = std::min(axis.lo, v);
    axis.hi = std::max(axis.hi, v);
}

void pad_axis(Axis& axis) {
    if (axis.log) {
        if (axis.lo == axis.hi) {
            axis.lo /= 2.0;
            axis.hi *= 2.0;
        }
        return;
    }
    if (axis.lo == axis.hi) {
        axis.lo -= 1.0;
        axis.hi += 1.0;
    } else {
        const double pad = (axis.hi - axis.lo) * 0.05;
        axis.lo -= pad;
        axis.hi += pad;
    }
}

std::string header_and_frame(const PlotSpec& spec, const Axis& ax, const Axis& ay) {
    std::ostringstream svg;
    const double px0 = kMarginLeft, px1 = spec.width - kMarginRight;
    const double py0 = spec.height - kMarginBottom, py1 = kMarginTop;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' '
        << spec.height << "\">\n";
    svg << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << escape_xml(spec.title)
        << "</text>\n";
    // axes
    svg << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px1 << "\" y2=\"" << py0
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px0 << "\" y2=\"" << py1
        << "\" stroke=\"black\"/>\n";
    for (double t : ax.ticks()) {
        const double x = ax.place(t, px0, px1);
        svg << "<line x1=\"" << x << "\" y1=\"" << py0 << "\" x2=\"" << x << "\" y2=\""
            << py0 + 4 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << py0 + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(t) << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = ay.place(t, py0, py1);
        svg << "<line x1=\"" << px0 - 4 << "\" y1=\"" << y << "\" x2=\"" << px0 << "\" y2=\""
            << y << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px0 - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(t) << "</text>\n";
    }
    svg << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << spec.height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape_xml(spec.x_label) << "</text>\n";
    svg << "<text x=\"16\" y=\"" << (py0 + py1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << (py0 + py1) / 2 << ")\">" << escape_xml(spec.y_label)
        << "</text>\n";
    return svg.str();
}

}  // namespace

std::string render_scatter_svg(const PlotSpec& spec, std::span<const PlotSeries> series) {
    bool any_point = false;
    for (const auto& s : series) any_point = any_point || !s.points.empty();
    if (series.empty() || !any_point)
        throw std::invalid_argument("plot: nothing to draw");

    Axis ax{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            spec.log_x};
    Axis ay{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            spec.log_y};
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if ((spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0))
                throw std::invalid_argument("plot: nonpositive value on a log axis");
            expand(ax, x);
            expand(ay, y);
        }
    pad_axis(ax);
    pad_axis(ay);

    const double px0 = kMarginLeft, px1 = spec.width - kMarginRight;
    const double py0 = spec.height - kMarginBottom, py1 = kMarginTop;
    std::ostringstream svg;
    svg << header_and_frame(spec, ax, ay);

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        if (s.line && s.points.size() >= 2) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : s.points)
                svg << ax.place(x, px0, px1) << ',' << ay.place(y, py0, py1) << ' ';
            svg << "\"/>\n";
        }
        for (const auto& [x, y] : s.points)
            svg << "<circle cx=\"" << ax.place(x, px0, px1) << "\" cy=\""
                << ay.place(y, py0, py1) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        // legend entry
        const double ly = kMarginTop + 16.0 * static_cast<double>(i);
        svg << "<rect x=\"" << px1 - 130 << "\" y=\"" << ly - 9
            << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << px1 - 115 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(s.name)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_histogram_svg(const PlotSpec& spec, std::span<const double> values,
                                 int bins) {
    if (values.empty()) throw std::invalid_argument("plot: nothing to draw");
    if (bins < 1) throw std::invalid_argument("plot: bins must be >= 1");
    double lo = values.front(), hi = values.front();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) hi = lo + 1.0;
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * bins);
        if (b >= counts.size()) b = counts.size() - 1;  // hi lands in the last bin
        ++counts[b];
    }

    Axis ax{lo, hi, false};
    std::size_t max_count = 1;
    for (std::size_t c : counts) max_count = std::max(max_count, c);
    Axis ay{0.0, static_cast<double>(max_count) * 1.05, false};

    const double px0 = kMarginLeft, px1 = spec.width - kMarginRight;
    const double py0 = spec.height - kMarginBottom, py1 = kMarginTop;
    std::ostringstream svg;
    svg << header_and_frame(spec, ax, ay);
    const double bin_width = (hi - lo) / bins;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double x_left = ax.place(lo + bin_width * static_cast<double>(b), px0, px1);
        const double x_right = ax.place(lo + bin_width * static_cast<double>(b + 1), px0, px1);
        const double y_top = ay.place(static_cast<double>(counts[b]), py0, py1);
        svg << "<rect class=\"bin\" x=\"" << x_left << "\" y=\"" << y_top << "\" width=\""
            << std::max(1.0, x_right - x_left - 1.0) << "\" height=\"" << py0 - y_top
            << "\" fill=\"#1f77b4\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_plot_file(const std::string& path, const std::string& svg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("plot: cannot open " + path);
    out << svg;
}

}  // namespace oracle_recon
