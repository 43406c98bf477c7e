#include "omtx/oracles/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "omtx/errors.hpp"

namespace omtx::oracles {

namespace {

using State = std::array<double, 4>;  // Re b, Im b, Q, V

struct Rhs {
    const OptomechParams& p;
    const DriveConfig& drive;

    State operator()(double t, const State& y) const {
        const std::complex<double> b(y[0], y[1]);
        const std::complex<double> signal = drive.e_signal * std::polar(1.0, -drive.delta * t);
        const std::complex<double> db = -std::complex<double>(p.kappa, p.delta_p) * b +
                                        std::complex<double>(0.0, p.g0 * y[2]) * b + drive.e_pump + signal;
        const double dv = -p.gamma_m * y[3] - p.omega_m * p.omega_m * y[2] + p.omega_m * p.g0 * std::norm(b);
        return {db.real(), db.imag(), y[3], dv};
    }
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [coef, k] : terms) {
        for (std::size_t i = 0; i < 4; ++i) out[i] += h * coef * (*k)[i];
    }
    return out;
}

void record(Trajectory& traj, double t, const State& y) {
    traj.times.push_back(t);
    traj.b.emplace_back(y[0], y[1]);
    traj.q.push_back(y[2]);
    traj.v.push_back(y[3]);
}

}  // namespace

Trajectory integrate_dynamics(const OptomechParams& p, const DriveConfig& drive,
                              const DynamicsState& initial, double t_end,
                              const IntegratorOptions& options) {
    p.validate();
    drive.validate();
    if (!(t_end > 0.0)) throw InvalidArgument("t_end must be > 0");
    if (!(options.tolerance > 0.0)) throw InvalidArgument("tolerance must be > 0");

    const Rhs rhs{p, drive};
    const double ceiling = options.divergence_ceiling > 0.0
                               ? options.divergence_ceiling
                               : 1e3 * (std::abs(initial.b) + (drive.e_pump + drive.e_signal) / p.kappa);

    Trajectory traj;
    traj.control.tolerance = options.tolerance;
    traj.control.min_step = std::numeric_limits<double>::infinity();

    State y{initial.b.real(), initial.b.imag(), initial.q, initial.v};
    double t = 0.0;
    if (options.record_from <= t) record(traj, t, y);

    const double fastest = p.kappa + std::abs(p.delta_p) + p.omega_m + std::abs(drive.delta) + p.gamma_m;
    double h = std::min({0.01 / fastest, options.max_step, t_end});
    State k1 = rhs(t, y);

    while (t < t_end) {
        if (traj.control.accepted + traj.control.rejected >= options.max_steps) {
            throw NumericalError("integrate_dynamics: step budget exhausted");
        }
        const bool last = t + h >= t_end;
        if (last) h = t_end - t;

        const State k2 = rhs(t + c2 * h, axpy(y, h, {{a21, &k1}}));
        const State k3 = rhs(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = rhs(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 =
            rhs(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs(t + h, y_new);

        // Error per unit time: (local error / h), scaled per component.
        double err = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const double local = e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i];
            const double scale = options.tolerance * (1.0 + std::max(std::abs(y[i]), std::abs(y_new[i])));
            err = std::max(err, std::abs(local) / scale);
        }
        if (!std::isfinite(err)) {
            throw DivergenceError(t);
        }

        if (err <= 1.0) {
            t = last ? t_end : t + h;
            y = y_new;
            k1 = k7;
            ++traj.control.accepted;
            traj.control.min_step = std::min(traj.control.min_step, h);
            traj.control.max_step = std::max(traj.control.max_step, h);
            traj.control.last_step = h;
            if (!(std::hypot(y[0], y[1]) <= ceiling)) throw DivergenceError(t);
            if (t >= options.record_from) record(traj, t, y);
        } else {
            ++traj.control.rejected;
        }
        // err ~ h^4 for the per-unit-time measure.
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.25), 0.2, 5.0);
        h = std::min(h * factor, options.max_step);
    }
    return traj;
}

}  // namespace omtx::oracles
