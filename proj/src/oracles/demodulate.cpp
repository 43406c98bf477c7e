#include "omtx/oracles/demodulate.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "omtx/errors.hpp"

namespace omtx::oracles {

DemodulationResult demodulate(const Trajectory& traj, double delta, int window_periods,
                              const DemodulationOptions& options) {
    if (delta == 0.0 || !std::isfinite(delta)) throw InvalidArgument("demodulate: delta must be finite and nonzero");
    if (window_periods < 1) throw InvalidArgument("demodulate: window_periods must be >= 1");
    if (traj.times.empty()) throw WindowTooShort("demodulate: empty trajectory");

    const double t_end = traj.times.back();
    const double length = window_periods * 2.0 * std::numbers::pi / std::abs(delta);
    const double t_start = t_end - length;
    if (t_start < traj.times.front() + options.min_transient) {
        throw WindowTooShort("demodulate: trajectory shorter than transient plus fit window");
    }

    std::size_t first = 0;
    while (first < traj.times.size() && traj.times[first] < t_start) ++first;
    const auto n = static_cast<Eigen::Index>(traj.times.size() - first);
    constexpr Eigen::Index min_samples = 8;
    if (n < min_samples) throw WindowTooShort("demodulate: too few samples in fit window");

    Eigen::MatrixX3cd design(n, 3);
    Eigen::VectorXcd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = traj.times[first + static_cast<std::size_t>(i)];
        design(i, 0) = 1.0;
        design(i, 1) = std::polar(1.0, -delta * t);
        design(i, 2) = std::polar(1.0, delta * t);
        rhs(i) = traj.b[first + static_cast<std::size_t>(i)];
    }
    const Eigen::Vector3cd coef = design.colPivHouseholderQr().solve(rhs);
    const double rms = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));

    DemodulationResult out;
    out.b0_est = coef(0);
    out.b_plus_est = coef(1);
    out.b_minus_est = coef(2);
    out.residual = rms;
    out.window = {t_start, t_end};
    out.converged = rms <= options.residual_fraction * std::abs(out.b0_est);
    return out;
}

}  // namespace omtx::oracles
