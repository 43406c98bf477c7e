#include "omtx/oracles/linearized.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "omtx/errors.hpp"
#include "omtx/model.hpp"

namespace omtx::oracles {

namespace {

using Matrix3c = Eigen::Matrix3cd;
constexpr std::complex<double> I{0.0, 1.0};

Matrix3c system_matrix(double delta, const OptomechParams& p, const SteadyState& s) {
    const double d = effective_detuning(p, s.w0);
    const std::complex<double> b0 = s.b0;
    Matrix3c m;
    m(0, 0) = p.kappa + I * d - I * delta;
    m(0, 1) = 0.0;
    m(0, 2) = -I * p.g0 * b0;
    m(1, 0) = 0.0;
    m(1, 1) = p.kappa - I * d - I * delta;
    m(1, 2) = I * p.g0 * std::conj(b0);
    m(2, 0) = -p.omega_m * p.g0 * std::conj(b0);
    m(2, 1) = -p.omega_m * p.g0 * b0;
    m(2, 2) = std::complex<double>(p.omega_m * p.omega_m - delta * delta, -p.gamma_m * delta);
    return m;
}

}  // namespace

std::complex<double> linearized_determinant(double delta, const OptomechParams& p, const SteadyState& s) {
    return system_matrix(delta, p, s).determinant();
}

LinearizedResponse linearized_response(double delta, const OptomechParams& p, const SteadyState& s,
                                       double e_signal) {
    const Matrix3c m = system_matrix(delta, p, s);
    const Eigen::FullPivLU<Matrix3c> lu(m);

    // Singular when the determinant is negligible against the product of row norms.
    double scale = 1.0;
    for (int r = 0; r < 3; ++r) scale *= m.row(r).norm();
    if (!(scale > 0.0 && std::abs(lu.determinant()) > default_singular_floor * scale)) throw SingularSystem(delta);

    Eigen::Vector3cd rhs(e_signal, 0.0, 0.0);
    const Eigen::Vector3cd x = lu.solve(rhs);
    return {x(0), x(1), x(2)};
}

}  // namespace omtx::oracles
