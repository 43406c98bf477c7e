#pragma once

#include <complex>

#include "omtx/params.hpp"

namespace omtx {

using cplx = std::complex<double>;

/// Default relative floor for |f(delta)|, in units of omega_m^2 kappa^2.
inline constexpr double default_singular_floor = 1e-18;

/// Mechanical susceptibility ratio eta(delta) = wm^2 / (wm^2 - i gamma_m delta - delta^2).
/// Throws DomainError when the denominator is exactly zero.
cplx eta(double delta, const OptomechParams& p);

/// Response denominator
///   f = (kappa - i delta)^2 wm^2 + [wm Delta_p - G0^2 w0 (eta + 1)]^2 - G0^4 eta^2 w0^2.
cplx f_denominator(double delta, const OptomechParams& p, double w0);

/// Intracavity signal sideband b+ in the closed form
///   b+ = E_s [(kappa - i delta - i Delta_p) wm^2 + i G0^2 w0 (eta + 1)] / f(delta),
/// evaluated exactly as written (see README for how it compares with the
/// linearized solver). Throws SingularResponse when |f| < floor wm^2 kappa^2.
cplx b_plus_closed_form(double delta, const OptomechParams& p, double w0, double e_signal,
                        double singular_floor = default_singular_floor);

/// Output-field sideband from the input-output relation, sqrt(2 kappa) b+.
cplx output_field(cplx b_plus, double kappa);

/// Effective detuning Delta_p - G0^2 w0 / wm seen by the cavity at photon number w0.
double effective_detuning(const OptomechParams& p, double w0);

}  // namespace omtx
