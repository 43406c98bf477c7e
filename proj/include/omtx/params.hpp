#pragma once

#include <optional>
#include <string>

namespace omtx {

/// Model rates of the driven optomechanical system. Every field is an angular
/// rate in rad/us; delta_p = omega_c - omega_p is signed.
struct OptomechParams {
    double g0 = 0.0;       ///< single-photon coupling rate G0
    double omega_m = 0.0;  ///< mechanical angular frequency
    double kappa = 0.0;    ///< cavity amplitude decay rate
    double gamma_m = 0.0;  ///< mechanical damping rate
    double delta_p = 0.0;  ///< pump-cavity detuning

    /// Throws InvalidArgument unless omega_m > 0, kappa > 0, gamma_m >= 0,
    /// g0 >= 0 and everything is finite.
    void validate() const;

    bool resolved_sideband() const noexcept { return omega_m > kappa; }

    bool operator==(const OptomechParams&) const = default;
};

/// Pump and signal drive. Amplitudes are model-native (sqrt(photon) rad/us),
/// real and non-negative; delta = omega_s - omega_p.
struct DriveConfig {
    double e_pump = 0.0;
    double e_signal = 0.0;
    double delta = 0.0;

    void validate() const;

    /// Message when both drives are on and e_signal / e_pump exceeds
    /// `max_ratio`, i.e. the linear-response assumption is questionable.
    std::optional<std::string> linear_response_warning(double max_ratio = 1e-2) const;

    bool operator==(const DriveConfig&) const = default;
};

/// Rates used for the transistor figures: (G0, wm, kappa, gamma_m) =
/// (0.9, 10, 2 pi 0.215, 2 pi 0.14), with the first two taken verbatim.
OptomechParams reference_params(double delta_p = -10.0);

}  // namespace omtx
