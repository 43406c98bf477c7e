#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "omtx/params.hpp"
#include "omtx/steady_state.hpp"

namespace omtx::oracles {

using Eigenvalues = std::array<std::complex<double>, 4>;

/// Real Jacobian of the drive-free fluctuation dynamics in the coordinates
/// (Re b, Im b, Q, dQ/dt) about the fixed point (b0, q0). Built from the same
/// right-hand side as integrate_dynamics.
Eigen::Matrix4d fluctuation_jacobian(const OptomechParams& p, const SteadyState& s);

/// Eigenvalues of fluctuation_jacobian, sorted by descending real part
/// (ties broken by descending imaginary part).
Eigenvalues jacobian_eigenvalues(const OptomechParams& p, const SteadyState& s);

double leading_real_part(const Eigenvalues& eig);

}  // namespace omtx::oracles
