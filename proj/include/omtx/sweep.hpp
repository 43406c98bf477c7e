#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "omtx/params.hpp"
#include "omtx/response.hpp"
#include "omtx/steady_state.hpp"

namespace omtx {

enum class Axis { delta_s, pump_power, pump_amplitude };
enum class Scale { linear, logarithmic };

std::string_view to_string(Axis a);
std::string_view to_string(Scale s);

/// A one-dimensional grid plus the evaluation settings that go with it.
struct SweepSpec {
    Axis axis = Axis::delta_s;
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
    Scale scale = Scale::linear;
    Method method = Method::linearized;
    BranchPolicy branch = BranchPolicy::lowest();
    /// Carrier angular frequency (rad/s), required when axis == pump_power.
    double carrier_angular_freq = 0.0;

    /// Throws InvalidArgument unless start < stop, count >= 2 and, for a
    /// logarithmic scale, start > 0.
    void validate() const;
    /// Grid values; the first and last equal start and stop exactly.
    std::vector<double> values() const;
};

/// Pump amplitude for one axis value of a pump grid.
double pump_amplitude_at(const SweepSpec& grid, double axis_value, const OptomechParams& p);

struct SweepOptions {
    int workers = 1;
    ResponseOptions response{};
};

struct Spectrum {
    OptomechParams params;
    DriveConfig drive;  ///< pump and signal amplitudes; delta varies per point
    Method method = Method::linearized;
    SteadyState steady;
    std::vector<ResponsePoint> points;  ///< ascending delta_s
};

/// Response spectrum over a delta_s grid. The steady state is resolved once;
/// points whose evaluation is singular are kept with `singular` set. Throws
/// NumericalError only when every point is singular.
Spectrum spectrum(const OptomechParams& p, double e_pump, double e_signal, const SweepSpec& grid,
                  const SweepOptions& options = {});

/// Where along delta_s the transistor gain is read.
struct GainProbe {
    enum class Kind { fixed, peak };
    Kind kind = Kind::fixed;
    double delta_s = 0.0;  ///< fixed probe position
    /// Peak search window in delta_s; when lo == hi it defaults to +-3 kappa.
    double window_lo = 0.0;
    double window_hi = 0.0;
    int scan_points = 401;

    static GainProbe fixed_at(double delta_s) { return {Kind::fixed, delta_s, 0.0, 0.0, 401}; }
    static GainProbe peak() { return {Kind::peak, 0.0, 0.0, 0.0, 401}; }
};

std::string_view to_string(GainProbe::Kind k);

/// Largest |eps_t|^2 over the probe window. The window is scanned on a
/// uniform grid plus the sideband frequencies given by the Jacobian
/// eigenvalues, then the best candidate is refined with Brent's method.
/// Only closed_form and linearized methods are accepted.
ResponsePoint peak_response(const OptomechParams& p, const SteadyState& s, double e_signal, Method method,
                            const GainProbe& probe, const ResponseOptions& options = {});

struct CharacteristicCurve {
    Axis axis = Axis::pump_amplitude;
    GainProbe probe;
    std::vector<double> pump_axis;   ///< grid values in axis units
    std::vector<double> amplitudes;  ///< corresponding E_p
    std::vector<double> w0;
    std::vector<double> gain;        ///< |eps_t|^2 at the probe over its pump-off value
    std::vector<double> probe_delta_s;
    std::vector<bool> stable;
    std::vector<double> leading_re;
    double reference_response = 0.0;  ///< pump-off |eps_t|^2 at the probe
    /// Interpolated zero crossing of the leading eigenvalue real part at the
    /// first stable-to-unstable transition along the grid, in axis units.
    std::optional<double> threshold_estimate;

    /// Number of leading grid points that are stable.
    std::size_t stable_prefix() const;
};

/// Transistor characteristic: normalized signal gain against pump strength.
/// Points at unstable fixed points are computed and flagged; singular points
/// carry NaN gain.
CharacteristicCurve transistor_curve(const OptomechParams& p, const SweepSpec& pump_grid, double e_signal,
                                     const GainProbe& probe = {}, const SweepOptions& options = {});

/// Pump amplitude at which the leading eigenvalue real part of the selected
/// branch changes sign, by bisection to `rel_tol`. Throws BracketInvalid
/// unless it is negative at `low` and positive at `high`.
double instability_threshold(const OptomechParams& p, double low, double high, double rel_tol = 1e-6,
                             const BranchPolicy& policy = BranchPolicy::lowest());

/// First stable-to-unstable transition of the lowest branch for pump
/// amplitudes in (0, e_max], located on a geometric scan of `samples` points
/// and refined by instability_threshold. Empty when none is found.
std::optional<double> find_instability_threshold(const OptomechParams& p, double e_max, int samples = 200,
                                                 double rel_tol = 1e-6);

struct BistabilityCell {
    int root_count = 0;
    std::vector<double> w0;
    std::vector<bool> stable;
};

struct BistabilityMap {
    std::vector<double> pump;     ///< E_p values (columns)
    std::vector<double> delta_p;  ///< Delta_p values (rows)
    std::vector<BistabilityCell> cells;  ///< row-major: cells[row * pump.size() + col]

    const BistabilityCell& at(std::size_t row, std::size_t col) const { return cells[row * pump.size() + col]; }
};

BistabilityMap bistability_map(const OptomechParams& p, const std::vector<double>& pump_amplitudes,
                               const std::vector<double>& delta_p_values, int workers = 1);

}  // namespace omtx
