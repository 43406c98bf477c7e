#include "omtx/errors.hpp"
#include "omtx/parallel.hpp"
#include "omtx/sweep.hpp"

namespace omtx {

Spectrum spectrum(const OptomechParams& p, double e_pump, double e_signal, const SweepSpec& grid,
                  const SweepOptions& options) {
    p.validate();
    if (grid.axis != Axis::delta_s) throw InvalidArgument("spectrum grid axis must be delta_s");
    if (!(e_signal > 0.0)) throw InvalidArgument("spectrum: e_signal must be > 0");
    const std::vector<double> axis = grid.values();

    Spectrum out;
    out.params = p;
    out.drive = DriveConfig{.e_pump = e_pump, .e_signal = e_signal, .delta = 0.0};
    out.method = grid.method;
    out.steady = select_branch(steady_state_roots(p, e_pump), grid.branch);
    out.points.resize(axis.size());

    parallel_for(axis.size(), options.workers, [&](std::size_t i) {
        const double delta = axis[i] + p.delta_p;
        ResponsePoint r;
        try {
            r = response_eps(delta, p, out.steady, e_signal, grid.method, options.response);
        } catch (const NumericalError&) {
            r = singular_point(delta, p);
        } catch (const DomainError&) {
            r = singular_point(delta, p);
        }
        r.delta_s = axis[i];
        out.points[i] = r;
    });

    bool any = false;
    for (const auto& r : out.points) any = any || !r.singular;
    if (!any) throw NumericalError("spectrum: every grid point is singular");
    return out;
}

}  // namespace omtx
