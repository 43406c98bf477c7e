#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "omtx/errors.hpp"
#include "omtx/oracles/stability.hpp"
#include "omtx/parallel.hpp"
#include "omtx/sweep.hpp"

namespace omtx {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// |eps_t|^2 at delta_s, or -inf where the response cannot be evaluated.
double power_at(double delta_s, const OptomechParams& p, const SteadyState& s, double e_signal, Method method,
                const ResponseOptions& options) {
    try {
        return response_eps(delta_s + p.delta_p, p, s, e_signal, method, options).power_response;
    } catch (const NumericalError&) {
        return -std::numeric_limits<double>::infinity();
    } catch (const DomainError&) {
        return -std::numeric_limits<double>::infinity();
    }
}

ResponsePoint probe_response(const OptomechParams& p, const SteadyState& s, double e_signal, Method method,
                             const GainProbe& probe, const ResponseOptions& options) {
    if (probe.kind == GainProbe::Kind::peak) return peak_response(p, s, e_signal, method, probe, options);
    ResponsePoint r = response_eps(probe.delta_s + p.delta_p, p, s, e_signal, method, options);
    r.delta_s = probe.delta_s;
    return r;
}

}  // namespace

ResponsePoint peak_response(const OptomechParams& p, const SteadyState& s, double e_signal, Method method,
                            const GainProbe& probe, const ResponseOptions& options) {
    if (method == Method::time_domain) throw InvalidArgument("peak probe supports closed and linearized methods only");
    if (probe.scan_points < 2) throw InvalidArgument("peak probe needs at least two scan points");
    double lo = probe.window_lo;
    double hi = probe.window_hi;
    if (lo == hi) {
        lo = -3.0 * p.kappa;
        hi = 3.0 * p.kappa;
    }
    if (!(lo < hi)) throw InvalidArgument("peak probe window requires lo < hi");

    const auto power = [&](double x) { return power_at(x, p, s, e_signal, method, options); };

    const double spacing = (hi - lo) / (probe.scan_points - 1);
    double best_x = lo;
    double best = power(lo);
    const auto consider = [&](double x) {
        const double v = power(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    };
    for (int i = 1; i < probe.scan_points; ++i) consider(i + 1 == probe.scan_points ? hi : lo + spacing * i);
    // Poles of the response sit at delta = -Im(lambda) for each eigenvalue lambda.
    for (const auto& lambda : oracles::jacobian_eigenvalues(p, s)) {
        const double x = -lambda.imag() - p.delta_p;
        if (x > lo && x < hi) consider(x);
    }
    if (!std::isfinite(best)) throw NumericalError("peak probe: no finite response in window");

    const double a = std::max(lo, best_x - spacing);
    const double b = std::min(hi, best_x + spacing);
    std::uintmax_t max_iter = 200;
    const auto refined = boost::math::tools::brent_find_minima([&](double x) { return -power(x); }, a, b,
                                                               std::numeric_limits<double>::digits / 2, max_iter);
    if (-refined.second > best) best_x = refined.first;

    ResponsePoint r = response_eps(best_x + p.delta_p, p, s, e_signal, method, options);
    r.delta_s = best_x;
    return r;
}

std::size_t CharacteristicCurve::stable_prefix() const {
    std::size_t n = 0;
    while (n < stable.size() && stable[n]) ++n;
    return n;
}

CharacteristicCurve transistor_curve(const OptomechParams& p, const SweepSpec& pump_grid, double e_signal,
                                     const GainProbe& probe, const SweepOptions& options) {
    p.validate();
    if (pump_grid.axis == Axis::delta_s) throw InvalidArgument("transistor curve needs a pump axis");
    if (!(e_signal > 0.0)) throw InvalidArgument("transistor curve: e_signal must be > 0");

    CharacteristicCurve curve;
    curve.axis = pump_grid.axis;
    curve.probe = probe;
    curve.pump_axis = pump_grid.values();
    const std::size_t n = curve.pump_axis.size();

    // Fixed points are resolved in order so continuation can follow a branch.
    std::vector<SteadyState> steady;
    steady.reserve(n);
    BranchPolicy policy = pump_grid.branch;
    for (double x : curve.pump_axis) {
        const double amplitude = pump_amplitude_at(pump_grid, x, p);
        const SteadyState s = select_branch(steady_state_roots(p, amplitude), policy);
        if (policy.kind == BranchPolicy::Kind::continuation) policy.previous_w0 = s.w0;
        curve.amplitudes.push_back(amplitude);
        curve.w0.push_back(s.w0);
        curve.stable.push_back(s.stable);
        curve.leading_re.push_back(s.leading_re);
        steady.push_back(s);
    }

    const SteadyState off = steady_state_roots(p, 0.0).front();
    curve.reference_response = probe_response(p, off, e_signal, pump_grid.method, probe, options.response).power_response;

    curve.gain.assign(n, nan);
    curve.probe_delta_s.assign(n, nan);
    parallel_for(n, options.workers, [&](std::size_t i) {
        try {
            const ResponsePoint r = probe_response(p, steady[i], e_signal, pump_grid.method, probe, options.response);
            curve.gain[i] = r.power_response / curve.reference_response;
            curve.probe_delta_s[i] = r.delta_s;
        } catch (const NumericalError&) {
        } catch (const DomainError&) {
        }
    });

    for (std::size_t i = 1; i < n; ++i) {
        if (curve.stable[i - 1] && !curve.stable[i]) {
            const double r0 = curve.leading_re[i - 1];
            const double r1 = curve.leading_re[i];
            const double x0 = curve.pump_axis[i - 1];
            const double x1 = curve.pump_axis[i];
            curve.threshold_estimate = x0 + (x1 - x0) * (-r0) / (r1 - r0);
            break;
        }
    }
    return curve;
}

double instability_threshold(const OptomechParams& p, double low, double high, double rel_tol,
                             const BranchPolicy& policy) {
    p.validate();
    if (!(low >= 0.0 && low < high)) throw InvalidArgument("instability_threshold: need 0 <= low < high");
    const auto lead = [&](double amplitude) {
        return select_branch(steady_state_roots(p, amplitude), policy).leading_re;
    };
    if (!(lead(low) < 0.0 && lead(high) > 0.0)) {
        throw BracketInvalid("instability_threshold: leading eigenvalue does not change sign over bracket");
    }
    while (high - low > rel_tol * high) {
        const double mid = 0.5 * (low + high);
        if (lead(mid) < 0.0) {
            low = mid;
        } else {
            high = mid;
        }
    }
    return 0.5 * (low + high);
}

std::optional<double> find_instability_threshold(const OptomechParams& p, double e_max, int samples,
                                                 double rel_tol) {
    p.validate();
    if (!(e_max > 0.0) || samples < 2) throw InvalidArgument("find_instability_threshold: bad scan");
    const auto lead = [&](double amplitude) { return steady_state_roots(p, amplitude).front().leading_re; };
    const double e_min = e_max * 1e-6;
    double prev = 0.0;
    if (lead(prev) >= 0.0) return std::nullopt;
    for (int i = 0; i < samples; ++i) {
        const double e = e_min * std::pow(e_max / e_min, static_cast<double>(i) / (samples - 1));
        if (lead(e) > 0.0) return instability_threshold(p, prev, e, rel_tol);
        prev = e;
    }
    return std::nullopt;
}

}  // namespace omtx
