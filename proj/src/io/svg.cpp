#include "omtx/io/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "omtx/errors.hpp"
#include "omtx/io/csv.hpp"

namespace omtx::io {

namespace {

constexpr double width = 720.0;
constexpr double height = 460.0;
constexpr double left = 80.0;
constexpr double right = 170.0;
constexpr double top = 40.0;
constexpr double bottom = 60.0;

constexpr std::array<const char*, 6> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v, const char* fmt = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo == hi) {
            const double d = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
            lo -= d;
            hi += d;
        }
    }
};

}  // namespace

PlotSeries spectrum_series(const Spectrum& s, std::string name) {
    PlotSeries out{std::move(name), {}, {}};
    for (const auto& p : s.points) {
        out.x.push_back(p.delta_s);
        out.y.push_back(p.power_response);
    }
    return out;
}

PlotSeries curve_series(const CharacteristicCurve& c, std::string name) {
    return PlotSeries{std::move(name), c.pump_axis, c.gain};
}

std::string render_svg(const std::vector<PlotSeries>& series, const PlotLabels& labels) {
    const auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!labels.log_y || y > 0.0);
    };
    const auto ty = [&](double y) { return labels.log_y ? std::log10(y) : y; };

    Range xr, yr;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            xr.add(s.x[i]);
            yr.add(ty(s.y[i]));
        }
    }
    if (!(xr.lo <= xr.hi)) throw InvalidArgument("emit_plot: no plottable data");
    xr.pad();
    yr.pad();

    const double pw = width - left - right;
    const double ph = height - top - bottom;
    const auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto py = [&](double y) { return top + ph - (ty(y) - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, "%.0f") + "\" height=\"" +
           num(height, "%.0f") + "\" viewBox=\"0 0 " + num(width, "%.0f") + " " + num(height, "%.0f") + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" + escape(labels.title) + "</text>\n";
    svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    constexpr int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / ticks;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / ticks;
        const double sx = left + pw * i / ticks;
        const double sy = top + ph - ph * i / ticks;
        svg += "<line x1=\"" + num(sx) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(sx) + "\" y2=\"" +
               num(top + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(sx) + "\" y=\"" + num(top + ph + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + num(fx, "%.3g") + "</text>\n";
        svg += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(sy) + "\" x2=\"" + num(left) + "\" y2=\"" + num(sy) +
               "\" stroke=\"black\"/>\n";
        const std::string ylab = labels.log_y ? "1e" + num(fy, "%.2g") : num(fy, "%.3g");
        svg += "<text x=\"" + num(left - 8) + "\" y=\"" + num(sy + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + ylab + "</text>\n";
    }
    svg += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(height - 15) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(labels.x_label) +
           "</text>\n";
    svg += "<text x=\"18\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 18 " + num(top + ph / 2) + ")\">" + escape(labels.y_label) +
           "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const std::string color = palette[k % palette.size()];
        std::vector<std::vector<std::pair<double, double>>> runs(1);
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) {
                if (!runs.back().empty()) runs.emplace_back();
                continue;
            }
            runs.back().emplace_back(px(s.x[i]), py(s.y[i]));
        }
        for (const auto& run : runs) {
            if (run.size() == 1) {
                svg += "<circle cx=\"" + num(run[0].first) + "\" cy=\"" + num(run[0].second) + "\" r=\"3\" fill=\"" +
                       color + "\"/>\n";
            } else if (run.size() > 1) {
                svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
                for (std::size_t i = 0; i < run.size(); ++i) {
                    if (i) svg += ' ';
                    svg += num(run[i].first) + "," + num(run[i].second);
                }
                svg += "\"/>\n";
            }
        }
        const double ly = top + 14 + 18.0 * static_cast<double>(k);
        svg += "<line x1=\"" + num(left + pw + 12) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(left + pw + 32) +
               "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(left + pw + 38) + "\" y=\"" + num(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.name) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_plot(const std::vector<PlotSeries>& series, const PlotLabels& labels, const std::filesystem::path& path) {
    write_file_atomic(path, render_svg(series, labels));
}

void emit_plot(const Spectrum& s, const std::filesystem::path& path) {
    emit_plot({spectrum_series(s, "E_p = " + num(s.drive.e_pump, "%.4g"))},
              {"Signal response", "delta_s (rad/us)", "|eps_T|^2", false}, path);
}

void emit_plot(const CharacteristicCurve& c, const std::filesystem::path& path) {
    emit_plot({curve_series(c, "gain")},
              {"Transistor characteristic", std::string(to_string(c.axis)), "gain", true}, path);
}

}  // namespace omtx::io
