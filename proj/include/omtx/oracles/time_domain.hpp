#pragma once

#include "omtx/oracles/demodulate.hpp"
#include "omtx/oracles/dynamics.hpp"
#include "omtx/steady_state.hpp"

namespace omtx::oracles {

struct TimeDomainOptions {
    double tolerance = 1e-10;
    int window_periods = 20;
    /// Transient skipped before the fit, in units of the slowest decay time.
    double transient_factor = 10.0;
    double residual_fraction = 0.01;
};

struct TimeDomainResponse {
    DemodulationResult demod;
    double transient = 0.0;  ///< skipped time (us)
    StepControl control;
};

/// Pump amplitude implied by a fixed point: b0 (kappa + i D), real by construction.
double pump_amplitude(const OptomechParams& p, const SteadyState& s);

/// Signal response measured by integrating the equations of motion from the
/// fixed point with the signal switched on, skipping transient_factor / r with
/// r = min(kappa, gamma_m / 2, -leading_re), then demodulating the field.
/// Throws NumericalError when the fixed point is unstable or the fit did not
/// converge.
TimeDomainResponse time_domain_response(double delta, const OptomechParams& p, const SteadyState& s,
                                        double e_signal, const TimeDomainOptions& options = {});

}  // namespace omtx::oracles
