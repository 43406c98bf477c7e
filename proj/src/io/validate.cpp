#include "omtx/io/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "omtx/errors.hpp"
#include "omtx/io/csv.hpp"
#include "omtx/model.hpp"
#include "omtx/oracles/linearized.hpp"
#include "omtx/oracles/stability.hpp"
#include "omtx/oracles/time_domain.hpp"
#include "omtx/parallel.hpp"
#include "omtx/sweep.hpp"

namespace omtx::io {

namespace {

double rel_dev(cplx a, cplx ref) { return std::abs(a - ref) / std::abs(ref); }

CheckRecord bare_cavity(const OptomechParams& p) {
    CheckRecord rec{"bare_cavity_closed_form", "1001 delta_s in [-5 kappa, 5 kappa], G0 = 0 and E_p = 0", 0.0, 1e-12,
                    false, ""};
    OptomechParams uncoupled = p;
    uncoupled.g0 = 0.0;
    const double e_pump = 5.0;
    const SteadyState s_uncoupled = steady_state_roots(uncoupled, e_pump).front();
    const SteadyState s_off = steady_state_roots(p, 0.0).front();
    for (int i = 0; i <= 1000; ++i) {
        const double ds = -5.0 * p.kappa + 10.0 * p.kappa * i / 1000.0;
        const cplx expected = 2.0 * p.kappa / cplx(p.kappa, -ds);
        for (const auto& [params, steady] : {std::pair{uncoupled, s_uncoupled}, std::pair{p, s_off}}) {
            const cplx eps = response_eps(ds + params.delta_p, params, steady, 1.0, Method::closed_form).eps_t;
            rec.max_rel_deviation = std::max(rec.max_rel_deviation, rel_dev(eps, expected));
        }
    }
    rec.passed = rec.max_rel_deviation < rec.tolerance;
    return rec;
}

CheckRecord cubic_integrity(const OptomechParams& p) {
    CheckRecord rec{"steady_state_cubic", "1000 seeded random (G0, kappa, Delta_p, E_p) samples", 0.0, 1e-10, true, ""};
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int bistable_negative = 0;
    int bad_count = 0;
    for (int i = 0; i < 1000; ++i) {
        OptomechParams q = p;
        q.g0 = 0.1 + 2.0 * unit(rng);
        q.kappa = 0.2 + 3.0 * unit(rng);
        q.delta_p = -20.0 + 40.0 * unit(rng);
        const double e_pump = std::pow(10.0, -1.0 + 4.0 * unit(rng));
        const auto roots = steady_state_roots(q, e_pump);
        if (roots.empty() || roots.size() > 3) ++bad_count;
        if (q.delta_p <= 0.0 && roots.size() > 1) ++bistable_negative;
        for (const auto& r : roots) {
            const double res = std::abs(steady_state_residual(q, e_pump, r.w0)) / (e_pump * e_pump);
            rec.max_rel_deviation = std::max(rec.max_rel_deviation, res);
        }
    }
    rec.passed = rec.max_rel_deviation < rec.tolerance && bad_count == 0 && bistable_negative == 0;
    rec.note = "bad root counts: " + std::to_string(bad_count) +
               "; multi-root cases with Delta_p <= 0: " + std::to_string(bistable_negative);
    return rec;
}

struct OperatingPoints {
    std::vector<double> pumps;
    std::vector<double> deltas;
    std::string summary;
};

OperatingPoints operating_points(const OptomechParams& p) {
    OperatingPoints op;
    const double scale = p.kappa * p.omega_m / std::max(p.g0, 1e-12);
    const auto threshold = find_instability_threshold(p, 100.0 * scale);
    const double reference = threshold.value_or(scale);
    for (double f : {0.3, 0.5, 0.7}) op.pumps.push_back(f * reference);
    for (int i = 0; i <= 20; ++i) op.deltas.push_back(p.omega_m - 3.0 * p.kappa + 6.0 * p.kappa * i / 20.0);
    std::ostringstream os;
    os << "E_p in {0.3, 0.5, 0.7} x " << reference << (threshold ? " (instability threshold)" : " (kappa wm / G0)")
       << "; 21 delta in [wm - 3 kappa, wm + 3 kappa]";
    op.summary = os.str();
    return op;
}

CheckRecord denominator_vs_determinant(const OptomechParams& p, const OperatingPoints& op) {
    CheckRecord rec{"f_denominator_vs_determinant", op.summary, 0.0, 1e-9, false, ""};
    for (double e_pump : op.pumps) {
        const SteadyState s = steady_state_roots(p, e_pump).front();
        for (double delta : op.deltas) {
            const cplx mech(p.omega_m * p.omega_m - delta * delta, -p.gamma_m * delta);
            const cplx from_det = p.omega_m * p.omega_m * oracles::linearized_determinant(delta, p, s) / mech;
            rec.max_rel_deviation = std::max(rec.max_rel_deviation, rel_dev(f_denominator(delta, p, s.w0), from_det));
        }
    }
    rec.passed = rec.max_rel_deviation < rec.tolerance;
    return rec;
}

CheckRecord cross_oracle(const OptomechParams& p, const OperatingPoints& op, const RunConfig& cfg) {
    CheckRecord rec{"linearized_vs_time_domain", op.summary + "; E_s = 1e-3 E_p", 0.0, cfg.cross_oracle_tolerance,
                    false, ""};
    oracles::TimeDomainOptions td;
    td.tolerance = cfg.tolerance;
    td.window_periods = cfg.window_periods;

    const std::size_t n = op.pumps.size() * op.deltas.size();
    std::vector<double> dev(n, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::string> failures(n);
    parallel_for(n, cfg.workers, [&](std::size_t k) {
        const double e_pump = op.pumps[k / op.deltas.size()];
        const double delta = op.deltas[k % op.deltas.size()];
        try {
            const SteadyState s = steady_state_roots(p, e_pump).front();
            const double e_signal = 1e-3 * e_pump;
            const cplx lin = oracles::linearized_response(delta, p, s, e_signal).b_plus;
            const cplx tdr = oracles::time_domain_response(delta, p, s, e_signal, td).demod.b_plus_est;
            dev[k] = rel_dev(tdr, lin);
        } catch (const Error& e) {
            failures[k] = e.what();
        }
    });
    int failed = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!failures[k].empty()) {
            ++failed;
            if (rec.note.empty()) rec.note = failures[k];
            continue;
        }
        rec.max_rel_deviation = std::max(rec.max_rel_deviation, dev[k]);
    }
    if (failed > 0) rec.max_rel_deviation = std::numeric_limits<double>::quiet_NaN();
    rec.passed = failed == 0 && rec.max_rel_deviation < rec.tolerance;
    return rec;
}

CheckRecord closed_form_conformance(const OptomechParams& p, const OperatingPoints& op, const RunConfig& cfg,
                                    const std::filesystem::path& map_path) {
    CheckRecord rec{"closed_form_vs_linearized", op.summary, 0.0, cfg.conformance_tolerance, false, ""};
    std::ostringstream csv;
    csv << "e_pump,delta,rel_deviation,re_closed,im_closed,re_linearized,im_linearized\n";
    for (double e_pump : op.pumps) {
        const SteadyState s = steady_state_roots(p, e_pump).front();
        for (double delta : op.deltas) {
            const cplx closed = b_plus_closed_form(delta, p, s.w0, 1.0);
            const cplx lin = oracles::linearized_response(delta, p, s, 1.0).b_plus;
            const double d = rel_dev(closed, lin);
            rec.max_rel_deviation = std::max(rec.max_rel_deviation, d);
            csv << format_double(e_pump) << ',' << format_double(delta) << ',' << format_double(d) << ','
                << format_double(closed.real()) << ',' << format_double(closed.imag()) << ','
                << format_double(lin.real()) << ',' << format_double(lin.imag()) << '\n';
        }
    }
    write_file_atomic(map_path, csv.str());

    if (rec.max_rel_deviation <= rec.tolerance) {
        rec.passed = true;
        rec.note = "closed form and linearized solver agree";
    } else if (cfg.method != Method::closed_form) {
        rec.passed = true;
        rec.note = "closed form deviates from the linearized solver; deviation map in " +
                   map_path.filename().string() + "; spectra and gain curves use method '" +
                   std::string(to_string(cfg.method)) + "'";
    } else {
        rec.passed = false;
        rec.note = "closed form deviates from the linearized solver but is the configured figure method";
    }
    return rec;
}

CheckRecord trace_identity(const OptomechParams& p, const OperatingPoints& op) {
    CheckRecord rec{"jacobian_trace_identity", "pump-off plus the three validation pumps", 0.0, 1e-9, false, ""};
    std::vector<double> pumps{0.0};
    pumps.insert(pumps.end(), op.pumps.begin(), op.pumps.end());
    const double trace = -2.0 * p.kappa - p.gamma_m;
    for (double e_pump : pumps) {
        for (const auto& s : steady_state_roots(p, e_pump)) {
            cplx sum{};
            for (const auto& v : oracles::jacobian_eigenvalues(p, s)) sum += v;
            rec.max_rel_deviation = std::max(rec.max_rel_deviation, std::abs(sum - trace) / std::abs(trace));
        }
    }
    rec.passed = rec.max_rel_deviation < rec.tolerance;
    return rec;
}

CheckRecord uncoupled_eigenvalues(const OptomechParams& p) {
    CheckRecord rec{"uncoupled_eigenvalues", "G0 = 0, E_p = 5", 0.0, 1e-9, false, ""};
    OptomechParams q = p;
    q.g0 = 0.0;
    const auto eig = oracles::jacobian_eigenvalues(q, steady_state_roots(q, 5.0).front());
    const double wd = std::sqrt(std::max(0.0, q.omega_m * q.omega_m - 0.25 * q.gamma_m * q.gamma_m));
    const std::vector<cplx> expected{{-q.kappa, q.delta_p}, {-q.kappa, -q.delta_p},
                                     {-0.5 * q.gamma_m, wd}, {-0.5 * q.gamma_m, -wd}};
    for (const auto& e : expected) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& v : eig) best = std::min(best, std::abs(v - e) / std::max(1.0, std::abs(e)));
        rec.max_rel_deviation = std::max(rec.max_rel_deviation, best);
    }
    rec.passed = rec.max_rel_deviation < rec.tolerance;
    return rec;
}

CheckRecord threshold_consistency(const OptomechParams& p, const RunConfig& cfg) {
    CheckRecord rec{"threshold_consistency", "", 0.0, 0.0, false, ""};
    const double scale = p.kappa * p.omega_m / std::max(p.g0, 1e-12);
    const auto threshold = find_instability_threshold(p, 100.0 * scale);
    if (!threshold) {
        rec.passed = true;
        rec.note = "no instability on the lowest branch below 100 kappa wm / G0";
        rec.grid = "geometric scan";
        return rec;
    }
    SweepSpec grid;
    grid.axis = Axis::pump_amplitude;
    grid.start = 0.0;
    grid.stop = 1.25 * *threshold;
    grid.count = std::max(cfg.pump_count, 2);
    grid.method = Method::linearized;
    SweepOptions so;
    so.workers = cfg.workers;
    const auto curve = transistor_curve(p, grid, 1e-3, GainProbe::fixed_at(0.0), so);
    const double cell = (grid.stop - grid.start) / (grid.count - 1);
    std::ostringstream os;
    os << grid.count << " pump amplitudes in [0, " << grid.stop << "]";
    rec.grid = os.str();
    rec.tolerance = 1.0;  // in grid cells
    if (!curve.threshold_estimate) {
        rec.note = "sweep did not bracket the threshold";
        rec.max_rel_deviation = std::numeric_limits<double>::quiet_NaN();
        return rec;
    }
    rec.max_rel_deviation = std::abs(*curve.threshold_estimate - *threshold) / cell;
    rec.passed = rec.max_rel_deviation <= rec.tolerance;
    std::ostringstream note;
    note.precision(10);
    note << "bisection " << *threshold << ", sweep " << *curve.threshold_estimate << " (deviation in grid cells)";
    rec.note = note.str();
    return rec;
}

}  // namespace

ConformanceReport run_validation(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    const OptomechParams& p = cfg.params;
    p.validate();
    const OperatingPoints op = operating_points(p);

    ConformanceReport report;
    report.environment = environment_stamp();
    report.config_digest = digest_hex(serialize_config(cfg));
    report.checks.push_back(bare_cavity(p));
    report.checks.push_back(cubic_integrity(p));
    report.checks.push_back(denominator_vs_determinant(p, op));
    report.checks.push_back(cross_oracle(p, op, cfg));
    report.checks.push_back(closed_form_conformance(p, op, cfg, out_dir / "conformance_map.csv"));
    report.checks.push_back(trace_identity(p, op));
    report.checks.push_back(uncoupled_eigenvalues(p));
    report.checks.push_back(threshold_consistency(p, cfg));
    write_file_atomic(out_dir / "conformance_report.json", report.to_json());
    return report;
}

}  // namespace omtx::io
