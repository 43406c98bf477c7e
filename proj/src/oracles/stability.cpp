#include "omtx/oracles/stability.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "omtx/model.hpp"

namespace omtx::oracles {

Eigen::Matrix4d fluctuation_jacobian(const OptomechParams& p, const SteadyState& s) {
    const double detuning = effective_detuning(p, s.w0);
    const double re_b = s.b0.real();
    const double im_b = s.b0.imag();

    // d(db)/dt = -(kappa + i detuning) db + i G0 b0 dQ
    // d(dV)/dt = -gamma_m dV - wm^2 dQ + wm G0 (2 Re b0 dx + 2 Im b0 dy)
    Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
    j(0, 0) = -p.kappa;
    j(0, 1) = detuning;
    j(0, 2) = -p.g0 * im_b;
    j(1, 0) = -detuning;
    j(1, 1) = -p.kappa;
    j(1, 2) = p.g0 * re_b;
    j(2, 3) = 1.0;
    j(3, 0) = 2.0 * p.omega_m * p.g0 * re_b;
    j(3, 1) = 2.0 * p.omega_m * p.g0 * im_b;
    j(3, 2) = -p.omega_m * p.omega_m;
    j(3, 3) = -p.gamma_m;
    return j;
}

Eigenvalues jacobian_eigenvalues(const OptomechParams& p, const SteadyState& s) {
    Eigen::EigenSolver<Eigen::Matrix4d> solver(fluctuation_jacobian(p, s), false);
    const auto& values = solver.eigenvalues();
    Eigenvalues out;
    for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = values(i);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return out;
}

double leading_real_part(const Eigenvalues& eig) {
    double lead = eig[0].real();
    for (const auto& v : eig) lead = std::max(lead, v.real());
    return lead;
}

}  // namespace omtx::oracles
