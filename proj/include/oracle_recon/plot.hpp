#ifndef ORACLE_RECON_PLOT_HPP
#define ORACLE_RECON_PLOT_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace oracle_recon {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
    bool line = true;  // polyline through the points in addition to markers
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 720;
    int height = 480;
};

// Self-contained SVG scatter/line chart (inline styles, no external assets).
// Throws std::invalid_argument when there is nothing to draw or a log axis
// sees a nonpositive coordinate.
std::string render_scatter_svg(const PlotSpec& spec, std::span<const PlotSeries> series);

// Equal-width histogram of values; bin counts sum to values.size().
std::string render_histogram_svg(const PlotSpec& spec, std::span<const double> values,
                                 int bins);

void write_plot_file(const std::string& path, const std::string& svg);

}  // namespace oracle_recon

#endif
