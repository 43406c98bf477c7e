#include "omtx/io/config.hpp"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "omtx/errors.hpp"
#include "omtx/units.hpp"

namespace omtx::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Quantity {
    double number;
    std::string_view suffix;
};

Quantity split_quantity(std::string_view key, std::string_view value, int line) {
    value = trim(value);
    const char* begin = value.data();
    const char* end = begin + value.size();
    if (begin != end && *begin == '+') ++begin;
    double number = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, number);
    if (ec != std::errc{} || ptr == begin) {
        throw ParseError("invalid number for '" + std::string(key) + "': '" + std::string(value) + "'", line);
    }
    return {number, trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)))};
}

double parse_plain(std::string_view key, std::string_view value, int line) {
    const Quantity q = split_quantity(key, value, line);
    if (!q.suffix.empty()) {
        throw ParseError("unexpected unit '" + std::string(q.suffix) + "' for '" + std::string(key) + "'", line);
    }
    return q.number;
}

int parse_int(std::string_view key, std::string_view value, int line) {
    value = trim(value);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        throw ParseError("invalid integer for '" + std::string(key) + "': '" + std::string(value) + "'", line);
    }
    return out;
}

double parse_rate(std::string_view key, std::string_view value, int line) {
    const Quantity q = split_quantity(key, value, line);
    if (q.suffix.empty()) {
        throw UnitSuffixMissing("rate '" + std::string(key) + "' needs a unit suffix (MHz or rad/us)", line);
    }
    if (q.suffix == "MHz") return units::mhz_to_rad_per_us(q.number);
    if (q.suffix == "rad/us") return q.number;
    throw ParseError("unknown rate unit '" + std::string(q.suffix) + "' for '" + std::string(key) + "'", line);
}

double parse_power(std::string_view key, std::string_view value, int line) {
    const Quantity q = split_quantity(key, value, line);
    if (q.suffix.empty()) {
        throw UnitSuffixMissing("power '" + std::string(key) + "' needs a unit suffix (W, mW, uW, nW)", line);
    }
    if (q.suffix == "W") return q.number;
    if (q.suffix == "mW") return q.number * 1e-3;
    if (q.suffix == "uW") return q.number * 1e-6;
    if (q.suffix == "nW") return q.number * 1e-9;
    throw ParseError("unknown power unit '" + std::string(q.suffix) + "' for '" + std::string(key) + "'", line);
}

double parse_length(std::string_view key, std::string_view value, int line) {
    const Quantity q = split_quantity(key, value, line);
    if (q.suffix.empty()) {
        throw UnitSuffixMissing("length '" + std::string(key) + "' needs a unit suffix (m, um, nm)", line);
    }
    if (q.suffix == "m") return q.number;
    if (q.suffix == "um") return q.number * 1e-6;
    if (q.suffix == "nm") return q.number * 1e-9;
    throw ParseError("unknown length unit '" + std::string(q.suffix) + "' for '" + std::string(key) + "'", line);
}

// Pump grid bounds: bare numbers are amplitudes, power suffixes give watts.
double parse_pump_bound(std::string_view key, std::string_view value, int line) {
    const Quantity q = split_quantity(key, value, line);
    if (q.suffix.empty()) return q.number;
    return parse_power(key, value, line);
}

[[noreturn]] void bad_choice(std::string_view key, std::string_view value, int line) {
    throw ParseError("invalid value '" + std::string(value) + "' for '" + std::string(key) + "'", line);
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value, int line)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"g0", [](RunConfig& c, auto k, auto v, int l) { c.params.g0 = parse_rate(k, v, l); }},
        {"omega_m", [](RunConfig& c, auto k, auto v, int l) { c.params.omega_m = parse_rate(k, v, l); }},
        {"kappa", [](RunConfig& c, auto k, auto v, int l) { c.params.kappa = parse_rate(k, v, l); }},
        {"gamma_m", [](RunConfig& c, auto k, auto v, int l) { c.params.gamma_m = parse_rate(k, v, l); }},
        {"delta_p", [](RunConfig& c, auto k, auto v, int l) { c.params.delta_p = parse_rate(k, v, l); }},
        {"pump_amplitude",
         [](RunConfig& c, auto k, auto v, int l) { c.pump = {DriveSetting::Kind::amplitude, parse_plain(k, v, l)}; }},
        {"pump_power",
         [](RunConfig& c, auto k, auto v, int l) { c.pump = {DriveSetting::Kind::power, parse_power(k, v, l)}; }},
        {"signal_amplitude",
         [](RunConfig& c, auto k, auto v, int l) { c.signal = {DriveSetting::Kind::amplitude, parse_plain(k, v, l)}; }},
        {"signal_power",
         [](RunConfig& c, auto k, auto v, int l) { c.signal = {DriveSetting::Kind::power, parse_power(k, v, l)}; }},
        {"carrier_wavelength",
         [](RunConfig& c, auto k, auto v, int l) { c.carrier_wavelength = parse_length(k, v, l); }},
        {"method",
         [](RunConfig& c, auto k, auto v, int l) {
             const auto m = parse_method(trim(v));
             if (!m) bad_choice(k, v, l);
             c.method = *m;
         }},
        {"branch",
         [](RunConfig& c, auto k, auto v, int l) {
             const auto t = trim(v);
             if (t == "lowest") c.branch.kind = BranchPolicy::Kind::lowest;
             else if (t == "highest") c.branch.kind = BranchPolicy::Kind::highest;
             else if (t == "continuation") c.branch.kind = BranchPolicy::Kind::continuation;
             else bad_choice(k, v, l);
         }},
        {"branch_w0", [](RunConfig& c, auto k, auto v, int l) { c.branch.previous_w0 = parse_plain(k, v, l); }},
        {"ds_start", [](RunConfig& c, auto k, auto v, int l) { c.ds_start = parse_rate(k, v, l); }},
        {"ds_stop", [](RunConfig& c, auto k, auto v, int l) { c.ds_stop = parse_rate(k, v, l); }},
        {"ds_count", [](RunConfig& c, auto k, auto v, int l) { c.ds_count = parse_int(k, v, l); }},
        {"pump_axis",
         [](RunConfig& c, auto k, auto v, int l) {
             const auto t = trim(v);
             if (t == "amplitude") c.pump_axis = DriveSetting::Kind::amplitude;
             else if (t == "power") c.pump_axis = DriveSetting::Kind::power;
             else bad_choice(k, v, l);
         }},
        {"pump_start", [](RunConfig& c, auto k, auto v, int l) { c.pump_start = parse_pump_bound(k, v, l); }},
        {"pump_stop", [](RunConfig& c, auto k, auto v, int l) { c.pump_stop = parse_pump_bound(k, v, l); }},
        {"pump_count", [](RunConfig& c, auto k, auto v, int l) { c.pump_count = parse_int(k, v, l); }},
        {"pump_scale",
         [](RunConfig& c, auto k, auto v, int l) {
             const auto t = trim(v);
             if (t == "linear") c.pump_scale = Scale::linear;
             else if (t == "log") c.pump_scale = Scale::logarithmic;
             else bad_choice(k, v, l);
         }},
        {"probe",
         [](RunConfig& c, auto k, auto v, int l) {
             const auto t = trim(v);
             if (t == "fixed") c.probe = GainProbe::Kind::fixed;
             else if (t == "peak") c.probe = GainProbe::Kind::peak;
             else bad_choice(k, v, l);
         }},
        {"probe_delta_s", [](RunConfig& c, auto k, auto v, int l) { c.probe_delta_s = parse_rate(k, v, l); }},
        {"out", [](RunConfig& c, auto, auto v, int) { c.out = std::string(trim(v)); }},
        {"workers", [](RunConfig& c, auto k, auto v, int l) { c.workers = parse_int(k, v, l); }},
        {"tolerance", [](RunConfig& c, auto k, auto v, int l) { c.tolerance = parse_plain(k, v, l); }},
        {"window_periods", [](RunConfig& c, auto k, auto v, int l) { c.window_periods = parse_int(k, v, l); }},
        {"cross_oracle_tolerance",
         [](RunConfig& c, auto k, auto v, int l) { c.cross_oracle_tolerance = parse_plain(k, v, l); }},
        {"conformance_tolerance",
         [](RunConfig& c, auto k, auto v, int l) { c.conformance_tolerance = parse_plain(k, v, l); }},
    };
    return table;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw Error("format_double: conversion failed");
    return std::string(buf, ptr);
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line) {
    const auto it = setters().find(trim(key));
    if (it == setters().end()) throw UnknownKey("unknown key '" + std::string(trim(key)) + "'", line);
    it->second(cfg, trim(key), value, line);
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("missing key", line_no);
        if (value.empty()) throw ParseError("missing value for '" + std::string(key) + "'", line_no);
        if (!seen.emplace(key).second) throw ParseError("duplicate key '" + std::string(key) + "'", line_no);
        apply_setting(cfg, key, value, line_no);
    }
    return cfg;
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    const auto rate = [&](const char* key, double v) { os << key << " = " << format_double(v) << " rad/us\n"; };
    const auto plain = [&](const char* key, double v) { os << key << " = " << format_double(v) << "\n"; };
    const auto drive = [&](const char* name, const DriveSetting& d) {
        if (d.kind == DriveSetting::Kind::amplitude) {
            os << name << "_amplitude = " << format_double(d.value) << "\n";
        } else {
            os << name << "_power = " << format_double(d.value) << " W\n";
        }
    };
    const auto pump_bound = [&](const char* key, double v) {
        os << key << " = " << format_double(v) << (c.pump_axis == DriveSetting::Kind::power ? " W\n" : "\n");
    };

    rate("g0", c.params.g0);
    rate("omega_m", c.params.omega_m);
    rate("kappa", c.params.kappa);
    rate("gamma_m", c.params.gamma_m);
    rate("delta_p", c.params.delta_p);
    drive("pump", c.pump);
    drive("signal", c.signal);
    if (c.carrier_wavelength) os << "carrier_wavelength = " << format_double(*c.carrier_wavelength) << " m\n";
    os << "method = " << to_string(c.method) << "\n";
    switch (c.branch.kind) {
        case BranchPolicy::Kind::lowest: os << "branch = lowest\n"; break;
        case BranchPolicy::Kind::highest: os << "branch = highest\n"; break;
        case BranchPolicy::Kind::continuation: os << "branch = continuation\n"; break;
    }
    plain("branch_w0", c.branch.previous_w0);
    rate("ds_start", c.ds_start);
    rate("ds_stop", c.ds_stop);
    os << "ds_count = " << c.ds_count << "\n";
    os << "pump_axis = " << (c.pump_axis == DriveSetting::Kind::power ? "power" : "amplitude") << "\n";
    pump_bound("pump_start", c.pump_start);
    pump_bound("pump_stop", c.pump_stop);
    os << "pump_count = " << c.pump_count << "\n";
    os << "pump_scale = " << (c.pump_scale == Scale::linear ? "linear" : "log") << "\n";
    os << "probe = " << to_string(c.probe) << "\n";
    rate("probe_delta_s", c.probe_delta_s);
    if (!c.out.empty()) os << "out = " << c.out << "\n";
    os << "workers = " << c.workers << "\n";
    plain("tolerance", c.tolerance);
    os << "window_periods = " << c.window_periods << "\n";
    plain("cross_oracle_tolerance", c.cross_oracle_tolerance);
    plain("conformance_tolerance", c.conformance_tolerance);
    return os.str();
}

double RunConfig::carrier_angular_freq() const {
    if (!carrier_wavelength) throw InvalidArgument("optical powers require carrier_wavelength");
    return units::angular_frequency_from_wavelength(*carrier_wavelength);
}

double RunConfig::pump_amplitude() const {
    if (pump.kind == DriveSetting::Kind::amplitude) return pump.value;
    return units::drive_amplitude(pump.value, params.kappa, carrier_angular_freq());
}

double RunConfig::signal_amplitude() const {
    if (signal.kind == DriveSetting::Kind::amplitude) return signal.value;
    return units::drive_amplitude(signal.value, params.kappa, carrier_angular_freq());
}

SweepSpec RunConfig::spectrum_grid() const {
    SweepSpec g;
    g.axis = Axis::delta_s;
    g.start = ds_start;
    g.stop = ds_stop;
    g.count = ds_count;
    g.method = method;
    g.branch = branch;
    g.validate();
    return g;
}

SweepSpec RunConfig::pump_grid() const {
    SweepSpec g;
    g.axis = pump_axis == DriveSetting::Kind::power ? Axis::pump_power : Axis::pump_amplitude;
    g.start = pump_start;
    g.stop = pump_stop;
    g.count = pump_count;
    g.scale = pump_scale;
    g.method = method;
    g.branch = branch;
    if (g.axis == Axis::pump_power) g.carrier_angular_freq = carrier_angular_freq();
    g.validate();
    return g;
}

GainProbe RunConfig::gain_probe() const {
    return probe == GainProbe::Kind::peak ? GainProbe::peak() : GainProbe::fixed_at(probe_delta_s);
}

std::string RunConfig::output_dir() const {
    if (!out.empty()) return out;
    if (const char* env = std::getenv("OMTX_OUT"); env != nullptr && *env != '\0') return env;
    return "omtx_out";
}

}  // namespace omtx::io
