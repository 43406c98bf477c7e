#pragma once

// Conversions between laboratory quantities (SI) and model-native units.
// Model rates are rad/us; drive amplitudes are sqrt(photon) rad/us.

namespace omtx::units {

inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double speed_of_light = 299792458.0;  // m / s

/// MHz (cycles per microsecond) to rad/us.
double mhz_to_rad_per_us(double mhz);

/// Angular frequency in rad/s of light with vacuum wavelength `lambda` (m).
double angular_frequency_from_wavelength(double lambda);

/// |E| = sqrt(2 P kappa / (hbar omega)) for an optical power `power` (W)
/// coupled into a cavity with amplitude decay `kappa` (rad/us) at carrier
/// angular frequency `carrier_angular_freq` (rad/s). Result in rad/us.
double drive_amplitude(double power, double kappa, double carrier_angular_freq);

/// G0 = (omega_c / L) sqrt(hbar / (m omega_m)); all inputs and the result SI.
double coupling_rate(double cavity_angular_freq, double cavity_length, double effective_mass,
                     double omega_m);

}  // namespace omtx::units
