#pragma once

// Test-only reference computations, written independently of the library's
// solution paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace omtx::testing {

using cplx = std::complex<double>;

/// Real roots of a x^3 + b x^2 + c x + d (a != 0) by the trigonometric /
/// Cardano formulas, ascending. Repeated roots appear with multiplicity.
inline std::vector<double> cardano_real_roots(double a, double b, double c, double d) {
    const double p = (3.0 * a * c - b * b) / (3.0 * a * a);
    const double q = (2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a * a * a);
    const double shift = -b / (3.0 * a);
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    std::vector<double> out;
    if (disc > 0.0) {
        // u - p / (3u) avoids the cancellation in the textbook sum of cube roots.
        const double s = std::sqrt(disc);
        const double u = q >= 0.0 ? -std::cbrt(q / 2.0 + s) : std::cbrt(-q / 2.0 + s);
        out.push_back(u - p / (3.0 * u) + shift);
    } else if (p == 0.0) {
        out.assign(3, shift);
    } else {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) out.push_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Discriminant of a x^3 + b x^2 + c x + d; positive means three distinct real roots.
inline double cubic_discriminant(double a, double b, double c, double d) {
    return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c - 27.0 * a * a * d * d;
}

/// Coefficients of w [kappa^2 + (Dp - G0^2 w / wm)^2] - Ep^2 expanded in w.
struct PhotonCubic {
    double a, b, c, d;
};

inline PhotonCubic photon_cubic(double g0, double omega_m, double kappa, double delta_p, double e_pump) {
    const double s = g0 * g0 / omega_m;
    return {s * s, -2.0 * s * delta_p, kappa * kappa + delta_p * delta_p, -e_pump * e_pump};
}

/// 3x3 complex determinant by cofactor expansion.
inline cplx det3(const cplx m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Solves the 3x3 system by Cramer's rule.
inline std::vector<cplx> cramer3(const cplx m[3][3], const cplx rhs[3]) {
    const cplx d = det3(m);
    std::vector<cplx> x(3);
    for (int col = 0; col < 3; ++col) {
        cplx mc[3][3];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) mc[r][c] = c == col ? rhs[r] : m[r][c];
        }
        x[static_cast<std::size_t>(col)] = det3(mc) / d;
    }
    return x;
}

/// Linearized sideband system built directly from the equations of motion,
/// solved by Cramer's rule. Returns {b+, conj(b-), Q+}.
inline std::vector<cplx> sideband_cramer(double delta, double g0, double omega_m, double kappa, double gamma_m,
                                         double delta_p, double e_pump, double w0, double e_signal) {
    const cplx I{0.0, 1.0};
    const double dt = delta_p - g0 * g0 * w0 / omega_m;
    const cplx b0 = e_pump / cplx(kappa, dt);
    const cplx m[3][3] = {{kappa + I * dt - I * delta, 0.0, -I * g0 * b0},
                          {0.0, kappa - I * dt - I * delta, I * g0 * std::conj(b0)},
                          {-omega_m * g0 * std::conj(b0), -omega_m * g0 * b0,
                           cplx(omega_m * omega_m - delta * delta, -gamma_m * delta)}};
    const cplx rhs[3] = {e_signal, 0.0, 0.0};
    return cramer3(m, rhs);
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace omtx::testing
