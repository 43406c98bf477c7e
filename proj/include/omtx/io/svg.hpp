#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "omtx/sweep.hpp"

namespace omtx::io {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
};

PlotSeries spectrum_series(const Spectrum& s, std::string name);
PlotSeries curve_series(const CharacteristicCurve& c, std::string name);

/// Self-contained SVG line chart, one polyline per series. Non-finite points
/// (and non-positive ones on a log axis) break the line. A series with a
/// single usable point is drawn as a marker. Output depends only on the input.
/// Throws InvalidArgument when there is no plottable point at all.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotLabels& labels);

void emit_plot(const std::vector<PlotSeries>& series, const PlotLabels& labels, const std::filesystem::path& path);
void emit_plot(const Spectrum& s, const std::filesystem::path& path);
void emit_plot(const CharacteristicCurve& c, const std::filesystem::path& path);

}  // namespace omtx::io
