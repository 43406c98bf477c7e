#pragma once

#include <complex>
#include <utility>

#include "omtx/oracles/dynamics.hpp"

namespace omtx::oracles {

struct DemodulationResult {
    std::complex<double> b0_est;
    std::complex<double> b_plus_est;   ///< coefficient of exp(-i delta t)
    std::complex<double> b_minus_est;  ///< coefficient of exp(+i delta t)
    double residual = 0.0;             ///< RMS of the fit residual
    std::pair<double, double> window;  ///< (t_start, t_end)
    bool converged = false;            ///< residual <= residual_fraction |b0_est|
};

struct DemodulationOptions {
    /// Time that must elapse between the first sample and the fit window.
    double min_transient = 0.0;
    double residual_fraction = 0.01;
};

/// Least-squares fit of b(t) on the final `window_periods` beat periods
/// 2 pi / |delta| of the trajectory to b0 + b+ exp(-i delta t) + b- exp(+i delta t).
/// Throws WindowTooShort when the trajectory cannot hold the transient plus
/// the window, or the window holds too few samples.
DemodulationResult demodulate(const Trajectory& traj, double delta, int window_periods,
                              const DemodulationOptions& options = {});

}  // namespace omtx::oracles
