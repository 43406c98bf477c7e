#include "omtx/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "omtx/errors.hpp"
#include "omtx/model.hpp"
#include "omtx/oracles/stability.hpp"

namespace omtx {

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::lower: return "lower";
        case Branch::middle: return "middle";
        case Branch::upper: return "upper";
    }
    return "?";
}

double steady_state_residual(const OptomechParams& p, double e_pump, double w0) {
    const double d = effective_detuning(p, w0);
    return w0 * (p.kappa * p.kappa + d * d) - e_pump * e_pump;
}

namespace {

double residual_slope(const OptomechParams& p, double w) {
    const double s = p.g0 * p.g0 / p.omega_m;
    return 3.0 * s * s * w * w - 4.0 * s * p.delta_p * w + p.kappa * p.kappa + p.delta_p * p.delta_p;
}

// Size of the terms that cancel in the residual at w, for round-off estimates.
double residual_scale(const OptomechParams& p, double e_pump, double w) {
    const double d = effective_detuning(p, w);
    return std::abs(w) * (p.kappa * p.kappa + d * d + std::abs(p.delta_p * d)) + e_pump * e_pump;
}

// Newton iteration kept inside [lo, hi], where the residual changes sign.
double solve_bracketed(const OptomechParams& p, double e_pump, double lo, double hi) {
    double f_lo = steady_state_residual(p, e_pump, lo);
    if (f_lo == 0.0) return lo;
    if (steady_state_residual(p, e_pump, hi) == 0.0) return hi;
    const bool rising = f_lo < 0.0;

    double w = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = steady_state_residual(p, e_pump, w);
        if (f == 0.0) return w;
        if ((f < 0.0) == rising) {
            lo = w;
        } else {
            hi = w;
        }
        const double slope = residual_slope(p, w);
        double next = slope != 0.0 ? w - f / slope : lo;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == w || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            w = next;
            break;
        }
        w = next;
    }
    // One polishing step, kept only if it improves the residual.
    const double slope = residual_slope(p, w);
    if (slope != 0.0) {
        const double polished = w - steady_state_residual(p, e_pump, w) / slope;
        if (polished >= 0.0 &&
            std::abs(steady_state_residual(p, e_pump, polished)) < std::abs(steady_state_residual(p, e_pump, w))) {
            w = polished;
        }
    }
    return w;
}

bool near_zero(const OptomechParams& p, double e_pump, double w) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return std::abs(steady_state_residual(p, e_pump, w)) <= 8.0 * eps * residual_scale(p, e_pump, w);
}

std::vector<SteadyState> label(const OptomechParams& p, double e_pump,
                               const std::vector<std::pair<double, bool>>& roots) {
    std::vector<SteadyState> out;
    out.reserve(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        Branch b = Branch::lower;
        if (i + 1 == roots.size() && roots.size() > 1) b = Branch::upper;
        else if (i > 0) b = Branch::middle;
        out.push_back(make_steady_state(p, e_pump, roots[i].first, b, roots[i].second));
    }
    return out;
}

}  // namespace

SteadyState make_steady_state(const OptomechParams& p, double e_pump, double w0, Branch branch,
                              bool degenerate) {
    SteadyState s;
    s.w0 = w0;
    s.b0 = e_pump / std::complex<double>(p.kappa, effective_detuning(p, w0));
    s.q0 = p.g0 * w0 / p.omega_m;
    s.branch = branch;
    s.degenerate = degenerate;
    const auto eig = oracles::jacobian_eigenvalues(p, s);
    s.leading_re = oracles::leading_real_part(eig);
    s.stable = s.leading_re < 0.0;
    return s;
}

std::vector<SteadyState> steady_state_roots(const OptomechParams& p, double e_pump) {
    p.validate();
    if (!std::isfinite(e_pump) || e_pump < 0.0) throw InvalidArgument("e_pump must be finite and >= 0");

    if (e_pump == 0.0) return label(p, e_pump, {{0.0, false}});

    const double s = p.g0 * p.g0 / p.omega_m;
    const double kappa2 = p.kappa * p.kappa;
    if (s == 0.0) return label(p, e_pump, {{e_pump * e_pump / (kappa2 + p.delta_p * p.delta_p), false}});

    // residual(w) >= w kappa^2 - E_p^2, so E_p^2 / kappa^2 bounds every root.
    const double upper_bound = e_pump * e_pump / kappa2;

    // Critical points exist for Delta_p > sqrt(3) kappa; otherwise the cubic is monotone.
    const double disc = p.delta_p * p.delta_p - 3.0 * kappa2;
    if (p.delta_p <= 0.0 || disc <= 0.0) {
        return label(p, e_pump, {{solve_bracketed(p, e_pump, 0.0, upper_bound), false}});
    }
    const double root_disc = std::sqrt(disc);
    const double c1 = (2.0 * p.delta_p - root_disc) / (3.0 * s);
    const double c2 = (2.0 * p.delta_p + root_disc) / (3.0 * s);
    const double r1 = steady_state_residual(p, e_pump, c1);  // local maximum
    const double r2 = steady_state_residual(p, e_pump, c2);  // local minimum
    const bool touch1 = near_zero(p, e_pump, c1);
    const bool touch2 = near_zero(p, e_pump, c2);

    std::vector<std::pair<double, bool>> roots;
    if (touch1) {
        roots.emplace_back(c1, true);
        roots.emplace_back(solve_bracketed(p, e_pump, c2, std::max(upper_bound, c2)), false);
    } else if (touch2) {
        roots.emplace_back(solve_bracketed(p, e_pump, 0.0, c1), false);
        roots.emplace_back(c2, true);
    } else if (r1 < 0.0) {
        roots.emplace_back(solve_bracketed(p, e_pump, c2, std::max(upper_bound, c2)), false);
    } else if (r2 > 0.0) {
        roots.emplace_back(solve_bracketed(p, e_pump, 0.0, c1), false);
    } else {
        roots.emplace_back(solve_bracketed(p, e_pump, 0.0, c1), false);
        roots.emplace_back(solve_bracketed(p, e_pump, c1, c2), false);
        roots.emplace_back(solve_bracketed(p, e_pump, c2, std::max(upper_bound, c2)), false);
    }
    return label(p, e_pump, roots);
}

SteadyState select_branch(const std::vector<SteadyState>& roots, const BranchPolicy& policy) {
    if (roots.empty()) throw InvalidArgument("select_branch: no roots");
    switch (policy.kind) {
        case BranchPolicy::Kind::lowest:
            return *std::min_element(roots.begin(), roots.end(),
                                     [](const auto& a, const auto& b) { return a.w0 < b.w0; });
        case BranchPolicy::Kind::highest:
            return *std::max_element(roots.begin(), roots.end(),
                                     [](const auto& a, const auto& b) { return a.w0 < b.w0; });
        case BranchPolicy::Kind::continuation:
            return *std::min_element(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
                return std::abs(a.w0 - policy.previous_w0) < std::abs(b.w0 - policy.previous_w0);
            });
    }
    return roots.front();
}

}  // namespace omtx
