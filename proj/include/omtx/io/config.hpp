#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "omtx/params.hpp"
#include "omtx/response.hpp"
#include "omtx/steady_state.hpp"
#include "omtx/sweep.hpp"

namespace omtx::io {

/// A drive given either as a model-native amplitude or as an optical power (W).
struct DriveSetting {
    enum class Kind { amplitude, power };
    Kind kind = Kind::amplitude;
    double value = 0.0;

    bool operator==(const DriveSetting&) const = default;
};

/// Fully resolved run configuration. Rates are rad/us, powers W, lengths m.
struct RunConfig {
    OptomechParams params = reference_params(-10.0);

    DriveSetting pump{DriveSetting::Kind::amplitude, 5.0};
    DriveSetting signal{DriveSetting::Kind::amplitude, 5e-3};
    std::optional<double> carrier_wavelength;  ///< m; required for power settings

    Method method = Method::linearized;
    BranchPolicy branch = BranchPolicy::lowest();

    // Spectrum grid over delta_s (rad/us).
    double ds_start = -5.0;
    double ds_stop = 5.0;
    int ds_count = 1001;

    // Pump grid for transistor / stability sweeps.
    DriveSetting::Kind pump_axis = DriveSetting::Kind::amplitude;
    double pump_start = 0.0;
    double pump_stop = 15.0;
    int pump_count = 151;
    Scale pump_scale = Scale::linear;

    GainProbe::Kind probe = GainProbe::Kind::fixed;
    double probe_delta_s = 0.0;

    std::string out;  ///< empty: OMTX_OUT or "omtx_out"
    int workers = 1;
    double tolerance = 1e-10;  ///< time-domain integrator tolerance
    int window_periods = 20;
    double cross_oracle_tolerance = 5e-3;
    double conformance_tolerance = 1e-6;

    bool operator==(const RunConfig&) const = default;

    double pump_amplitude() const;
    double signal_amplitude() const;
    /// Carrier angular frequency (rad/s) from carrier_wavelength.
    double carrier_angular_freq() const;
    SweepSpec spectrum_grid() const;
    SweepSpec pump_grid() const;
    GainProbe gain_probe() const;
    std::string output_dir() const;
};

/// Parses the line-oriented `key = value` format ('#' starts a comment).
/// Rates require a "MHz" (times 2 pi) or "rad/us" suffix. Throws ParseError,
/// UnknownKey or UnitSuffixMissing with the offending line number.
RunConfig parse_config(std::string_view text);

/// Applies one `key = value` assignment on top of an existing config.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line = 0);

/// Text that parse_config maps back to an identical RunConfig.
std::string serialize_config(const RunConfig& cfg);

/// Shortest decimal text that reads back to exactly `v`.
std::string format_double(double v);

}  // namespace omtx::io
