#include "omtx/units.hpp"

#include <cmath>
#include <numbers>

#include "omtx/errors.hpp"

namespace omtx::units {

double mhz_to_rad_per_us(double mhz) { return 2.0 * std::numbers::pi * mhz; }

double angular_frequency_from_wavelength(double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("wavelength must be > 0");
    return 2.0 * std::numbers::pi * speed_of_light / lambda;
}

double drive_amplitude(double power, double kappa, double carrier_angular_freq) {
    if (!(power >= 0.0)) throw InvalidArgument("optical power must be >= 0");
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be > 0");
    if (!(carrier_angular_freq > 0.0)) throw InvalidArgument("carrier frequency must be > 0");
    // kappa in 1/s, amplitude in 1/s, then back to 1/us.
    const double kappa_si = kappa * 1e6;
    return std::sqrt(2.0 * power * kappa_si / (hbar * carrier_angular_freq)) * 1e-6;
}

double coupling_rate(double cavity_angular_freq, double cavity_length, double effective_mass,
                     double omega_m) {
    if (!(cavity_angular_freq > 0.0) || !(cavity_length > 0.0) || !(effective_mass > 0.0) ||
        !(omega_m > 0.0)) {
        throw InvalidArgument("coupling_rate arguments must all be > 0");
    }
    return cavity_angular_freq / cavity_length * std::sqrt(hbar / (effective_mass * omega_m));
}

}  // namespace omtx::units
