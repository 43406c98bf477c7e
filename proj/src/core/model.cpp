#include "omtx/model.hpp"

#include <cmath>

#include "omtx/errors.hpp"

namespace omtx {

namespace {
constexpr cplx I{0.0, 1.0};
}

cplx eta(double delta, const OptomechParams& p) {
    const double wm2 = p.omega_m * p.omega_m;
    const cplx den{wm2 - delta * delta, -p.gamma_m * delta};
    if (den == cplx{0.0, 0.0}) throw DomainError("eta: denominator is zero (gamma_m = 0, |delta| = omega_m)");
    return wm2 / den;
}

cplx f_denominator(double delta, const OptomechParams& p, double w0) {
    const cplx e = eta(delta, p);
    const double wm = p.omega_m;
    const double g2w = p.g0 * p.g0 * w0;
    const cplx kd = p.kappa - I * delta;
    const cplx bracket = wm * p.delta_p - g2w * (e + 1.0);
    return kd * kd * (wm * wm) + bracket * bracket - g2w * g2w * e * e;
}

cplx b_plus_closed_form(double delta, const OptomechParams& p, double w0, double e_signal,
                        double singular_floor) {
    const cplx f = f_denominator(delta, p, w0);
    const double scale = p.omega_m * p.omega_m * p.kappa * p.kappa;
    if (!(std::abs(f) >= singular_floor * scale)) throw SingularResponse(delta);
    const cplx e = eta(delta, p);
    const double wm2 = p.omega_m * p.omega_m;
    const cplx numerator = (p.kappa - I * delta - I * p.delta_p) * wm2 + I * (p.g0 * p.g0 * w0) * (e + 1.0);
    return e_signal / f * numerator;
}

cplx output_field(cplx b_plus, double kappa) { return std::sqrt(2.0 * kappa) * b_plus; }

double effective_detuning(const OptomechParams& p, double w0) {
    return p.delta_p - p.g0 * p.g0 * w0 / p.omega_m;
}

}  // namespace omtx
