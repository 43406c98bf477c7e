#include "omtx/io/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "omtx/errors.hpp"
#include "omtx/io/config.hpp"
#include "omtx/io/csv.hpp"
#include "omtx/io/svg.hpp"
#include "omtx/io/validate.hpp"
#include "omtx/oracles/stability.hpp"
#include "omtx/sweep.hpp"

namespace omtx::io {

namespace fs = std::filesystem;

namespace {

struct Overrides {
    std::vector<std::pair<std::string, std::string>> values;

    // Registers `--flag VALUE` that is applied as `key = VALUE`.
    void bind(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(
               flag, [this, key](const std::string& v) { values.emplace_back(key, v); }, help)
            ->allow_extra_args(false);
    }
};

std::string read_text(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot read config file " + path.string(), 0);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void print_roots(std::ostream& out, const RunConfig& cfg) {
    const double e_pump = cfg.pump_amplitude();
    const auto roots = steady_state_roots(cfg.params, e_pump);
    out << "# E_p = " << format_double(e_pump) << ", Delta_p = " << format_double(cfg.params.delta_p)
        << " rad/us, roots = " << roots.size() << "\n";
    out << "w0,re_b0,im_b0,q0,branch,stable,leading_eig_re,degenerate\n";
    for (const auto& r : roots) {
        out << format_double(r.w0) << ',' << format_double(r.b0.real()) << ',' << format_double(r.b0.imag()) << ','
            << format_double(r.q0) << ',' << to_string(r.branch) << ',' << (r.stable ? 1 : 0) << ','
            << format_double(r.leading_re) << ',' << (r.degenerate ? 1 : 0) << '\n';
    }
}

double response_near_zero(const Spectrum& s) {
    const ResponsePoint* best = nullptr;
    for (const auto& p : s.points) {
        if (!best || std::abs(p.delta_s) < std::abs(best->delta_s)) best = &p;
    }
    return best ? best->power_response : std::nan("");
}

int cmd_spectrum(std::ostream& out, std::ostream& err, const RunConfig& cfg, bool reference) {
    const fs::path dir = cfg.output_dir();
    const double e_pump = cfg.pump_amplitude();
    const double e_signal = cfg.signal_amplitude();
    const DriveConfig drive{.e_pump = e_pump, .e_signal = e_signal, .delta = 0.0};
    if (auto w = drive.linear_response_warning()) err << "warning: " << *w << "\n";

    SweepOptions so;
    so.workers = cfg.workers;
    so.response.time_domain.tolerance = cfg.tolerance;
    so.response.time_domain.window_periods = cfg.window_periods;
    const SweepSpec grid = cfg.spectrum_grid();

    const Spectrum on = spectrum(cfg.params, e_pump, e_signal, grid, so);
    if (!on.steady.stable) err << "warning: steady state is unstable; response is formal only\n";
    write_csv(on, dir / "spectrum.csv");
    std::vector<PlotSeries> series;
    if (reference) {
        const Spectrum off = spectrum(cfg.params, 0.0, e_signal, grid, so);
        write_csv(off, dir / "spectrum_off.csv");
        series.push_back(spectrum_series(off, "pump off"));
        out << "pump off: |eps_T|^2 at delta_s~0 = " << format_double(response_near_zero(off)) << "\n";
    }
    series.push_back(spectrum_series(on, "pump on"));
    emit_plot(series, {"Signal response (" + std::string(to_string(cfg.method)) + ")", "delta_s (rad/us)", "|eps_T|^2", false},
              dir / "spectrum.svg");
    out << "pump on (E_p = " << format_double(e_pump) << ", w0 = " << format_double(on.steady.w0)
        << ", stable = " << (on.steady.stable ? "yes" : "no")
        << "): |eps_T|^2 at delta_s~0 = " << format_double(response_near_zero(on)) << "\n";
    out << "wrote " << (dir / "spectrum.csv").string() << "\n";
    return exit_ok;
}

int cmd_transistor(std::ostream& out, const RunConfig& cfg) {
    const fs::path dir = cfg.output_dir();
    SweepOptions so;
    so.workers = cfg.workers;
    so.response.time_domain.tolerance = cfg.tolerance;
    so.response.time_domain.window_periods = cfg.window_periods;
    const auto curve = transistor_curve(cfg.params, cfg.pump_grid(), cfg.signal_amplitude(), cfg.gain_probe(), so);
    write_csv(curve, dir / "transistor.csv");
    emit_plot(curve, dir / "transistor.svg");

    const std::size_t prefix = curve.stable_prefix();
    double best = 0.0;
    for (std::size_t i = 0; i < prefix; ++i) {
        if (std::isfinite(curve.gain[i])) best = std::max(best, curve.gain[i]);
    }
    out << "probe: " << to_string(curve.probe.kind) << ", stable points: " << prefix << "/" << curve.gain.size()
        << ", max stable gain = " << format_double(best) << "\n";
    if (curve.threshold_estimate) out << "threshold estimate: " << format_double(*curve.threshold_estimate) << "\n";
    out << "wrote " << (dir / "transistor.csv").string() << "\n";
    return exit_ok;
}

int cmd_stability(std::ostream& out, const RunConfig& cfg) {
    const fs::path dir = cfg.output_dir();
    const SweepSpec grid = cfg.pump_grid();
    const auto axis = grid.values();
    std::ostringstream csv;
    csv << "pump,e_pump,w0,stable,eig0_re,eig0_im,eig1_re,eig1_im,eig2_re,eig2_im,eig3_re,eig3_im\n";
    BranchPolicy policy = grid.branch;
    std::optional<std::pair<double, double>> bracket;
    double prev_amp = 0.0;
    bool prev_stable = false;
    for (std::size_t i = 0; i < axis.size(); ++i) {
        const double amp = pump_amplitude_at(grid, axis[i], cfg.params);
        const SteadyState s = select_branch(steady_state_roots(cfg.params, amp), policy);
        if (policy.kind == BranchPolicy::Kind::continuation) policy.previous_w0 = s.w0;
        const auto eig = oracles::jacobian_eigenvalues(cfg.params, s);
        csv << format_double(axis[i]) << ',' << format_double(amp) << ',' << format_double(s.w0) << ','
            << (s.stable ? 1 : 0);
        for (const auto& v : eig) csv << ',' << format_double(v.real()) << ',' << format_double(v.imag());
        csv << '\n';
        if (i > 0 && prev_stable && !s.stable && !bracket) bracket = std::pair{prev_amp, amp};
        prev_amp = amp;
        prev_stable = s.stable;
    }
    write_file_atomic(dir / "stability.csv", csv.str());
    if (bracket && policy.kind == BranchPolicy::Kind::lowest) {
        out << "instability threshold E_p = "
            << format_double(instability_threshold(cfg.params, bracket->first, bracket->second)) << "\n";
    } else if (bracket) {
        out << "instability bracketed in E_p [" << format_double(bracket->first) << ", "
            << format_double(bracket->second) << "]\n";
    } else {
        out << "no stable-to-unstable transition on this grid\n";
    }
    out << "wrote " << (dir / "stability.csv").string() << "\n";
    return exit_ok;
}

int cmd_validate(std::ostream& out, const RunConfig& cfg) {
    const fs::path dir = cfg.output_dir();
    const ConformanceReport report = run_validation(cfg, dir);
    for (const auto& c : report.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(32) << c.name
            << " max_dev=" << format_double(c.max_rel_deviation) << " tol=" << format_double(c.tolerance);
        if (!c.note.empty()) out << "  (" << c.note << ")";
        out << "\n";
    }
    out << "wrote " << (dir / "conformance_report.json").string() << "\n";
    return report.all_passed() ? exit_ok : exit_validation;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pump-controlled optomechanical transistor simulator", "omtx"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string config_path;
    std::vector<std::string> sets;
    Overrides overrides;
    app.add_option("--config", config_path, "configuration file (key = value lines)");
    app.add_option("--set", sets, "override a configuration key, KEY=VALUE (repeatable)");
    overrides.bind(&app, "--out", "out", "output directory");
    overrides.bind(&app, "--method", "method", "closed | linearized | timedomain");
    overrides.bind(&app, "--workers", "workers", "worker threads");

    auto* steady = app.add_subcommand("steady", "steady-state roots and their stability");
    overrides.bind(steady, "--pump", "pump_amplitude", "pump amplitude E_p");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "signal response against delta_s");
    overrides.bind(spectrum_cmd, "--pump", "pump_amplitude", "pump amplitude E_p");
    overrides.bind(spectrum_cmd, "--signal", "signal_amplitude", "signal amplitude E_s");
    overrides.bind(spectrum_cmd, "--ds-start", "ds_start", "first delta_s (with unit)");
    overrides.bind(spectrum_cmd, "--ds-stop", "ds_stop", "last delta_s (with unit)");
    overrides.bind(spectrum_cmd, "--ds-count", "ds_count", "number of delta_s points");
    bool no_reference = false;
    spectrum_cmd->add_flag("--no-reference", no_reference, "skip the pump-off reference spectrum");

    auto* transistor = app.add_subcommand("transistor", "gain against pump strength");
    auto* stability = app.add_subcommand("stability", "Jacobian eigenvalues against pump strength");
    for (auto* sub : {transistor, stability}) {
        overrides.bind(sub, "--pump-start", "pump_start", "first pump value");
        overrides.bind(sub, "--pump-stop", "pump_stop", "last pump value");
        overrides.bind(sub, "--pump-count", "pump_count", "number of pump values");
        overrides.bind(sub, "--pump-scale", "pump_scale", "linear | log");
    }
    overrides.bind(transistor, "--signal", "signal_amplitude", "signal amplitude E_s");
    overrides.bind(transistor, "--probe", "probe", "fixed | peak");
    overrides.bind(transistor, "--probe-delta-s", "probe_delta_s", "fixed probe position (with unit)");

    auto* validate = app.add_subcommand("validate", "oracle cross-checks and conformance report");

    if (argc <= 1) {
        err << app.help();
        return exit_usage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return exit_usage;
    }
    if (app.get_subcommands().empty()) {
        err << "error: a subcommand is required\n" << app.help();
        return exit_usage;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = parse_config(read_text(config_path));
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ParseError("--set expects KEY=VALUE, got '" + s + "'", 0);
            apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        for (const auto& [key, value] : overrides.values) apply_setting(cfg, key, value);
        cfg.params.validate();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (steady->parsed()) {
            print_roots(out, cfg);
            return exit_ok;
        }
        if (spectrum_cmd->parsed()) return cmd_spectrum(out, err, cfg, !no_reference);
        if (transistor->parsed()) return cmd_transistor(out, cfg);
        if (stability->parsed()) return cmd_stability(out, cfg);
        if (validate->parsed()) return cmd_validate(out, cfg);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_usage;
}

}  // namespace omtx::io
