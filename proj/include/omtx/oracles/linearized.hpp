#pragma once

#include <complex>

#include "omtx/params.hpp"
#include "omtx/steady_state.hpp"

namespace omtx::oracles {

/// First-order sideband amplitudes at the signal frequency.
struct LinearizedResponse {
    std::complex<double> b_plus;        ///< field component ~ exp(-i delta t)
    std::complex<double> b_minus_conj;  ///< conj of the field component ~ exp(+i delta t)
    std::complex<double> q_plus;        ///< displacement component ~ exp(-i delta t)
};

/// Solves the 3x3 linear system obtained by inserting the three-frequency
/// ansatz into the equations of motion and keeping first-order terms:
///
///   (kappa + i D - i delta) b+ - i G0 b0 Q+           = E_s
///   (kappa - i D - i delta) c  + i G0 conj(b0) Q+     = 0      c = conj(b-)
///   (wm^2 - delta^2 - i gamma_m delta) Q+ - wm G0 (conj(b0) b+ + b0 c) = 0
///
/// with D = Delta_p - G0^2 w0 / wm. Throws SingularSystem when the matrix is
/// numerically singular.
LinearizedResponse linearized_response(double delta, const OptomechParams& p, const SteadyState& s,
                                       double e_signal);

/// Determinant of the 3x3 system above.
std::complex<double> linearized_determinant(double delta, const OptomechParams& p, const SteadyState& s);

}  // namespace omtx::oracles
