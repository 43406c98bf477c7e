#include "omtx/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "omtx/errors.hpp"

namespace omtx {

void OptomechParams::validate() const {
    for (double v : {g0, omega_m, kappa, gamma_m, delta_p}) {
        if (!std::isfinite(v)) throw InvalidArgument("model parameters must be finite");
    }
    if (omega_m <= 0.0) throw InvalidArgument("omega_m must be > 0");
    if (kappa <= 0.0) throw InvalidArgument("kappa must be > 0");
    if (gamma_m < 0.0) throw InvalidArgument("gamma_m must be >= 0");
    if (g0 < 0.0) throw InvalidArgument("g0 must be >= 0");
}

void DriveConfig::validate() const {
    if (!std::isfinite(e_pump) || e_pump < 0.0) throw InvalidArgument("e_pump must be finite and >= 0");
    if (!std::isfinite(e_signal) || e_signal < 0.0) {
        throw InvalidArgument("e_signal must be finite and >= 0");
    }
    if (!std::isfinite(delta)) throw InvalidArgument("delta must be finite");
}

std::optional<std::string> DriveConfig::linear_response_warning(double max_ratio) const {
    if (e_pump <= 0.0 || e_signal <= 0.0) return std::nullopt;
    const double ratio = e_signal / e_pump;
    if (ratio <= max_ratio) return std::nullopt;
    std::ostringstream os;
    os << "signal/pump amplitude ratio " << ratio << " exceeds " << max_ratio
       << "; linear response may be inaccurate";
    return os.str();
}

OptomechParams reference_params(double delta_p) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return OptomechParams{.g0 = 0.9,
                          .omega_m = 10.0,
                          .kappa = two_pi * 0.215,
                          .gamma_m = two_pi * 0.14,
                          .delta_p = delta_p};
}

}  // namespace omtx
