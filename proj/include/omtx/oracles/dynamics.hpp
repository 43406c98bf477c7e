#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "omtx/params.hpp"

namespace omtx::oracles {

/// Mean-field state (b, Q, dQ/dt).
struct DynamicsState {
    std::complex<double> b{};
    double q = 0.0;
    double v = 0.0;
};

struct IntegratorOptions {
    /// Bound on the local error per unit time, scaled by (1 + |y|) per component.
    double tolerance = 1e-9;
    double max_step = std::numeric_limits<double>::infinity();
    /// Samples before this time are not stored.
    double record_from = 0.0;
    /// |b| above this aborts with DivergenceError. Zero selects
    /// 1e3 (|b(0)| + (E_p + E_s) / kappa), which the dissipative field never reaches.
    double divergence_ceiling = 0.0;
    std::size_t max_steps = 50'000'000;
};

struct StepControl {
    double tolerance = 0.0;
    int order = 5;  ///< order of the propagated solution
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    double min_step = 0.0;
    double max_step = 0.0;
    double last_step = 0.0;
};

struct Trajectory {
    std::vector<double> times;  ///< us, strictly increasing
    std::vector<std::complex<double>> b;
    std::vector<double> q;
    std::vector<double> v;  ///< dQ/dt in 1/us
    StepControl control;

    std::size_t size() const noexcept { return times.size(); }
};

/// Integrates
///   db/dt = -(i Delta_p + kappa) b + i G0 b Q + E_p + E_s exp(-i delta t)
///   d2Q/dt2 + gamma_m dQ/dt + wm^2 Q = wm G0 |b|^2
/// from t = 0 to t_end with an adaptive Dormand-Prince 5(4) pair.
/// Deterministic for fixed inputs.
Trajectory integrate_dynamics(const OptomechParams& p, const DriveConfig& drive,
                              const DynamicsState& initial, double t_end,
                              const IntegratorOptions& options = {});

}  // namespace omtx::oracles
