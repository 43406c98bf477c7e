#include <cmath>

#include "omtx/errors.hpp"
#include "omtx/sweep.hpp"
#include "omtx/units.hpp"

namespace omtx {

std::string_view to_string(Axis a) {
    switch (a) {
        case Axis::delta_s: return "delta_s";
        case Axis::pump_power: return "pump_power";
        case Axis::pump_amplitude: return "pump_amplitude";
    }
    return "?";
}

std::string_view to_string(Scale s) { return s == Scale::linear ? "linear" : "log"; }

std::string_view to_string(GainProbe::Kind k) { return k == GainProbe::Kind::fixed ? "fixed" : "peak"; }

void SweepSpec::validate() const {
    if (!std::isfinite(start) || !std::isfinite(stop)) throw InvalidArgument("grid bounds must be finite");
    if (!(start < stop)) throw InvalidArgument("grid requires start < stop");
    if (count < 2) throw InvalidArgument("grid requires count >= 2");
    if (scale == Scale::logarithmic && !(start > 0.0)) throw InvalidArgument("logarithmic grid requires start > 0");
    if (axis == Axis::pump_power && !(carrier_angular_freq > 0.0)) {
        throw InvalidArgument("pump_power grid requires a carrier frequency");
    }
}

std::vector<double> SweepSpec::values() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(count));
    const double last = count - 1;
    if (scale == Scale::linear) {
        for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + (stop - start) * (i / last);
    } else {
        const double a = std::log(start);
        const double b = std::log(stop);
        for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * (i / last));
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

double pump_amplitude_at(const SweepSpec& grid, double axis_value, const OptomechParams& p) {
    switch (grid.axis) {
        case Axis::pump_amplitude: return axis_value;
        case Axis::pump_power: return units::drive_amplitude(axis_value, p.kappa, grid.carrier_angular_freq);
        case Axis::delta_s: break;
    }
    throw InvalidArgument("pump grid must have a pump_power or pump_amplitude axis");
}

}  // namespace omtx
