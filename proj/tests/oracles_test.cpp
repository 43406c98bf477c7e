#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "omtx/errors.hpp"
#include "omtx/model.hpp"
#include "omtx/oracles/demodulate.hpp"
#include "omtx/oracles/dynamics.hpp"
#include "omtx/oracles/linearized.hpp"
#include "omtx/oracles/stability.hpp"
#include "omtx/oracles/time_domain.hpp"
#include "omtx/sweep.hpp"
#include "reference_oracles.hpp"

using namespace omtx;
using namespace omtx::oracles;
using omtx::testing::rel_err;

TEST_CASE("linearized response limits") {
    auto p = reference_params(-10.0);
    p.g0 = 0.0;
    const auto s = steady_state_roots(p, 4.0).front();
    for (double delta : {-12.0, -10.0, 0.3, 9.0}) {
        const auto r = linearized_response(delta, p, s, 0.2);
        CHECK(rel_err(r.b_plus, 0.2 / cplx(p.kappa, p.delta_p - delta)) < 1e-14);
        CHECK(std::abs(r.b_minus_conj) == 0.0);
        CHECK(std::abs(r.q_plus) == 0.0);
    }

    const auto q = reference_params(-10.0);
    const auto pumped = steady_state_roots(q, 6.0).front();
    const auto zero = linearized_response(9.7, q, pumped, 0.0);
    CHECK(std::abs(zero.b_plus) == 0.0);
    CHECK(std::abs(zero.b_minus_conj) == 0.0);
    CHECK(std::abs(zero.q_plus) == 0.0);
}

TEST_CASE("linearized response matches Cramer solution") {
    const auto p = reference_params(-10.0);
    for (double e_pump : {1.0, 6.0, 11.0, 300.0}) {
        const auto s = steady_state_roots(p, e_pump).front();
        for (int i = 0; i <= 40; ++i) {
            const double delta = -14.0 + 0.7 * i;
            const auto r = linearized_response(delta, p, s, 1e-3);
            const auto ref = omtx::testing::sideband_cramer(delta, p.g0, p.omega_m, p.kappa, p.gamma_m, p.delta_p,
                                                            e_pump, s.w0, 1e-3);
            CHECK(rel_err(r.b_plus, ref[0]) < 1e-10);
            if (std::abs(ref[2]) > 0.0) CHECK(rel_err(r.q_plus, ref[2]) < 1e-10);
        }
    }
}

TEST_CASE("linearized determinant vanishing is reported") {
    // Undamped mechanics at delta = wm with G0 = 0: the third row is zero.
    auto p = reference_params(-10.0);
    p.gamma_m = 0.0;
    p.g0 = 0.0;
    const auto s = steady_state_roots(p, 2.0).front();
    CHECK_THROWS_AS(linearized_response(p.omega_m, p, s, 1.0), SingularSystem);
}

TEST_CASE("integrator: linear cavity filling and ringdown") {
    auto p = reference_params(-10.0);
    p.g0 = 0.0;
    IntegratorOptions opts;
    opts.tolerance = 1e-10;

    const DriveConfig pump{.e_pump = 3.0, .e_signal = 0.0, .delta = 1.0};
    const auto fill = integrate_dynamics(p, pump, {}, 30.0, opts);
    const cplx expected = 3.0 / cplx(p.kappa, p.delta_p);
    CHECK(rel_err(fill.b.back(), expected) < 1e-8);
    CHECK(fill.control.order == 5);
    CHECK(fill.control.accepted > 0);

    const auto ring = integrate_dynamics(p, DriveConfig{}, DynamicsState{cplx(1.0, 0.0), 0.0, 0.0}, 5.0, opts);
    for (std::size_t i = 0; i < ring.size(); ++i) {
        CHECK(std::abs(std::abs(ring.b[i]) - std::exp(-p.kappa * ring.times[i])) < 1e-8);
        CHECK(std::abs(ring.b[i]) == doctest::Approx(std::exp(-p.kappa * ring.times[i])).epsilon(0.01));
        if (i > 0) CHECK(ring.times[i] > ring.times[i - 1]);
    }
    CHECK(ring.times.back() == 5.0);
}

TEST_CASE("integrator: determinism and tolerance convergence") {
    const auto p = reference_params(-10.0);
    const auto s = steady_state_roots(p, 6.0).front();
    const DriveConfig drive{.e_pump = 6.0, .e_signal = 6e-3, .delta = 10.2};
    IntegratorOptions opts;
    opts.tolerance = 1e-8;
    const auto a = integrate_dynamics(p, drive, {s.b0, s.q0, 0.0}, 8.0, opts);
    const auto b = integrate_dynamics(p, drive, {s.b0, s.q0, 0.0}, 8.0, opts);
    CHECK(a.times == b.times);
    CHECK(a.b == b.b);

    TimeDomainOptions td;
    td.tolerance = 1e-9;
    const cplx coarse = time_domain_response(10.2, p, s, 6e-3, td).demod.b_plus_est;
    td.tolerance = 0.5e-9;
    const cplx fine = time_domain_response(10.2, p, s, 6e-3, td).demod.b_plus_est;
    CHECK(rel_err(coarse, fine) < 5e-3);
}

TEST_CASE("integrator errors") {
    const auto p = reference_params(-10.0);
    CHECK_THROWS_AS(integrate_dynamics(p, DriveConfig{}, {}, 0.0), InvalidArgument);
    IntegratorOptions bad;
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(integrate_dynamics(p, DriveConfig{}, {}, 1.0, bad), InvalidArgument);
}

TEST_CASE("integrator: escape above the instability threshold") {
    // Above threshold the fixed point is unstable; a tiny signal seeds growth
    // until |b| leaves a ceiling placed just above the fixed-point amplitude.
    const auto p = reference_params(-10.0);
    const auto threshold = find_instability_threshold(p, 1e3);
    REQUIRE(threshold.has_value());
    const double e_pump = 1.3 * *threshold;
    const auto s = steady_state_roots(p, e_pump).front();
    REQUIRE_FALSE(s.stable);

    IntegratorOptions opts;
    opts.tolerance = 1e-9;
    opts.divergence_ceiling = 1.5 * std::abs(s.b0);
    const DriveConfig drive{.e_pump = e_pump, .e_signal = 1e-4 * e_pump, .delta = -10.0};
    bool escaped = false;
    try {
        integrate_dynamics(p, drive, {s.b0, s.q0, 0.0}, 500.0, opts);
    } catch (const DivergenceError& e) {
        escaped = true;
        CHECK(e.escape_time() > 0.0);
        CHECK(e.escape_time() < 500.0);
    }
    CHECK(escaped);

    // Below threshold the same ceiling is never reached.
    const auto below = steady_state_roots(p, 0.7 * *threshold).front();
    opts.divergence_ceiling = 1.5 * std::abs(below.b0);
    const DriveConfig calm{.e_pump = 0.7 * *threshold, .e_signal = 1e-4 * *threshold, .delta = -10.0};
    CHECK_NOTHROW(integrate_dynamics(p, calm, {below.b0, below.q0, 0.0}, 200.0, opts));
}

TEST_CASE("demodulate synthetic signals") {
    const double delta = 2.5;
    Trajectory traj;
    for (int i = 0; i <= 4000; ++i) {
        const double t = 0.01 * i;
        traj.times.push_back(t);
        traj.b.push_back(3.0 + cplx(0.1, 0.2) * std::polar(1.0, -delta * t));
    }
    const auto r = demodulate(traj, delta, 5);
    CHECK(std::abs(r.b0_est - 3.0) < 1e-12);
    CHECK(std::abs(r.b_plus_est - cplx(0.1, 0.2)) < 1e-12);
    CHECK(std::abs(r.b_minus_est) < 1e-12);
    CHECK(r.residual < 1e-12);
    CHECK(r.converged);
    CHECK(r.window.second == 40.0);
    CHECK(r.window.first == doctest::Approx(40.0 - 5 * 2.0 * std::numbers::pi / delta));

    const auto flipped = demodulate(traj, -delta, 5);
    CHECK(std::abs(flipped.b_minus_est - cplx(0.1, 0.2)) < 1e-12);
    CHECK(std::abs(flipped.b_plus_est) < 1e-12);

    DemodulationOptions strict;
    strict.min_transient = 30.0;
    CHECK_THROWS_AS(demodulate(traj, delta, 5, strict), WindowTooShort);
    CHECK_THROWS_AS(demodulate(traj, delta, 100), WindowTooShort);
    CHECK_THROWS_AS(demodulate(traj, 0.0, 5), InvalidArgument);

    // Off-model content raises the residual and fails the convergence test.
    Trajectory noisy = traj;
    for (std::size_t i = 0; i < noisy.size(); ++i) noisy.b[i] += 0.5 * std::polar(1.0, 7.3 * noisy.times[i]);
    CHECK_FALSE(demodulate(noisy, delta, 5).converged);
}

TEST_CASE("time-domain agrees with linearized response") {
    const auto p = reference_params(-10.0);
    for (double e_pump : {3.0, 8.0}) {
        const auto s = steady_state_roots(p, e_pump).front();
        REQUIRE(s.stable);
        for (double delta : {p.omega_m - 3.0 * p.kappa, p.omega_m, p.omega_m + 1.1 * p.kappa}) {
            const double e_signal = 1e-3 * e_pump;
            const auto lin = linearized_response(delta, p, s, e_signal).b_plus;
            const auto td = time_domain_response(delta, p, s, e_signal);
            CHECK(rel_err(td.demod.b_plus_est, lin) < 5e-3);
            CHECK(td.demod.residual < 0.01 * std::abs(td.demod.b0_est));
            CHECK(rel_err(td.demod.b0_est, s.b0) < 1e-3);
        }
    }
    const auto unstable = steady_state_roots(p, 20.0).front();
    REQUIRE_FALSE(unstable.stable);
    CHECK_THROWS_AS(time_domain_response(10.0, p, unstable, 0.02), NumericalError);
}

TEST_CASE("pump amplitude recovered from a fixed point") {
    const auto p = reference_params(-10.0);
    for (double e : {0.0, 0.5, 6.0, 1e4}) {
        const auto s = steady_state_roots(p, e).front();
        CHECK(pump_amplitude(p, s) == doctest::Approx(e).epsilon(1e-13));
    }
}

TEST_CASE("jacobian eigenvalues") {
    SUBCASE("uncoupled blocks") {
        auto p = reference_params(-10.0);
        p.g0 = 0.0;
        const auto eig = jacobian_eigenvalues(p, steady_state_roots(p, 5.0).front());
        const double wd = std::sqrt(p.omega_m * p.omega_m - 0.25 * p.gamma_m * p.gamma_m);
        const std::vector<cplx> expected{{-p.kappa, p.delta_p}, {-p.kappa, -p.delta_p},
                                         {-0.5 * p.gamma_m, wd}, {-0.5 * p.gamma_m, -wd}};
        for (const auto& e : expected) {
            const auto it = std::min_element(eig.begin(), eig.end(),
                                             [&](cplx a, cplx b) { return std::abs(a - e) < std::abs(b - e); });
            CHECK(std::abs(*it - e) < 1e-9);
        }
    }

    SUBCASE("passive system") {
        const auto p = reference_params(-10.0);
        const auto eig = jacobian_eigenvalues(p, steady_state_roots(p, 0.0).front());
        for (const auto& v : eig) CHECK(v.real() <= -std::min(p.kappa, 0.5 * p.gamma_m) + 1e-9);
    }

    SUBCASE("trace identity") {
        for (double dp : {-10.0, 4.0, 10.0}) {
            const auto p = reference_params(dp);
            for (double e : {0.0, 1.0, 10.0, 50.0, 400.0}) {
                for (const auto& s : steady_state_roots(p, e)) {
                    cplx sum{};
                    for (const auto& v : jacobian_eigenvalues(p, s)) sum += v;
                    CHECK(std::abs(sum.real() - (-2.0 * p.kappa - p.gamma_m)) < 1e-9 * (2.0 * p.kappa + p.gamma_m));
                    CHECK(std::abs(sum.imag()) < 1e-9);
                }
            }
        }
    }

    SUBCASE("sorted by real part") {
        const auto p = reference_params(-10.0);
        const auto eig = jacobian_eigenvalues(p, steady_state_roots(p, 9.0).front());
        for (std::size_t i = 1; i < eig.size(); ++i) CHECK(eig[i - 1].real() >= eig[i].real());
        CHECK(leading_real_part(eig) == eig[0].real());
    }
}

TEST_CASE("eigenvalue threshold coincides with the zero of |f| on the real axis") {
    // Independent route: for each pump on a grid, minimise |f(delta)| over delta
    // near the mechanical sideband; the pump where that minimum is smallest marks
    // the crossing of an eigenvalue through the imaginary axis.
    const auto p = reference_params(-10.0);
    const double cell = 0.05;
    double best_pump = 0.0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 400; ++i) {
        const double e = cell * i;
        const double w0 = steady_state_roots(p, e).front().w0;
        const auto absf = [&](double delta) { return std::abs(f_denominator(delta, p, w0)); };
        double x = 0.0, fx = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 400; ++k) {
            const double d = -12.0 + 4.0 * k / 400.0;
            if (absf(d) < fx) {
                fx = absf(d);
                x = d;
            }
        }
        std::uintmax_t iters = 200;
        const auto refined = boost::math::tools::brent_find_minima(absf, x - 0.01, x + 0.01, 50, iters);
        if (refined.second < best_value) {
            best_value = refined.second;
            best_pump = e;
        }
    }
    const double threshold = instability_threshold(p, 1.0, 20.0);
    CHECK(std::abs(best_pump - threshold) <= cell);
}
