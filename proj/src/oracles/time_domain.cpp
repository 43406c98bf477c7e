#include "omtx/oracles/time_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "omtx/errors.hpp"
#include "omtx/model.hpp"

namespace omtx::oracles {

double pump_amplitude(const OptomechParams& p, const SteadyState& s) {
    return (s.b0 * std::complex<double>(p.kappa, effective_detuning(p, s.w0))).real();
}

TimeDomainResponse time_domain_response(double delta, const OptomechParams& p, const SteadyState& s,
                                        double e_signal, const TimeDomainOptions& options) {
    if (delta == 0.0) throw InvalidArgument("time-domain response needs delta != 0");
    if (!s.stable) throw NumericalError("time-domain response requested about an unstable fixed point");

    double rate = p.kappa;
    if (p.gamma_m > 0.0) rate = std::min(rate, 0.5 * p.gamma_m);
    rate = std::min(rate, -s.leading_re);
    if (!(rate > 0.0)) throw InvalidArgument("time-domain response needs a positive decay rate");

    TimeDomainResponse out;
    out.transient = options.transient_factor / rate;
    const double window = options.window_periods * 2.0 * std::numbers::pi / std::abs(delta);

    const DriveConfig drive{.e_pump = pump_amplitude(p, s), .e_signal = e_signal, .delta = delta};
    IntegratorOptions io;
    io.tolerance = options.tolerance;
    io.record_from = 0.5 * out.transient;
    // Keep several samples per beat period for the fit.
    io.max_step = 2.0 * std::numbers::pi / std::abs(delta) / 16.0;

    const Trajectory traj = integrate_dynamics(p, drive, DynamicsState{s.b0, s.q0, 0.0}, out.transient + window, io);
    DemodulationOptions dopts;
    dopts.residual_fraction = options.residual_fraction;
    out.demod = demodulate(traj, delta, options.window_periods, dopts);
    out.control = traj.control;
    if (!out.demod.converged) throw NumericalError("time-domain demodulation did not converge");
    return out;
}

}  // namespace omtx::oracles
