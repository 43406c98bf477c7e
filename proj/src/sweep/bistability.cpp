#include "omtx/parallel.hpp"
#include "omtx/sweep.hpp"

namespace omtx {

BistabilityMap bistability_map(const OptomechParams& p, const std::vector<double>& pump_amplitudes,
                               const std::vector<double>& delta_p_values, int workers) {
    p.validate();
    BistabilityMap map;
    map.pump = pump_amplitudes;
    map.delta_p = delta_p_values;
    map.cells.resize(pump_amplitudes.size() * delta_p_values.size());

    parallel_for(map.cells.size(), workers, [&](std::size_t k) {
        OptomechParams cell_params = p;
        cell_params.delta_p = delta_p_values[k / pump_amplitudes.size()];
        const double e_pump = pump_amplitudes[k % pump_amplitudes.size()];
        BistabilityCell cell;
        for (const SteadyState& s : steady_state_roots(cell_params, e_pump)) {
            cell.w0.push_back(s.w0);
            cell.stable.push_back(s.stable);
        }
        cell.root_count = static_cast<int>(cell.w0.size());
        map.cells[k] = std::move(cell);
    });
    return map;
}

}  // namespace omtx
