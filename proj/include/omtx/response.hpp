#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include "omtx/model.hpp"
#include "omtx/oracles/time_domain.hpp"
#include "omtx/params.hpp"
#include "omtx/steady_state.hpp"

namespace omtx {

enum class Method { closed_form, linearized, time_domain };

std::string_view to_string(Method m);
/// Accepts "closed", "closed_form", "linearized", "timedomain", "time_domain".
std::optional<Method> parse_method(std::string_view text);

/// Signal response at one detuning.
struct ResponsePoint {
    double delta = 0.0;    ///< omega_s - omega_p
    double delta_s = 0.0;  ///< omega_s - omega_c = delta - Delta_p
    cplx b_plus{};
    cplx b_out_plus{};     ///< sqrt(2 kappa) b_plus
    cplx eps_t{};          ///< 2 kappa b_plus / E_s
    double power_response = 0.0;  ///< |eps_t|^2
    bool singular = false;        ///< set by sweeps; values are NaN
};

struct ResponseOptions {
    double singular_floor = default_singular_floor;
    oracles::TimeDomainOptions time_domain{};
};

/// Signal sideband b+ by the selected method.
cplx b_plus(Method method, double delta, const OptomechParams& p, const SteadyState& s, double e_signal,
            const ResponseOptions& options = {});

/// Assembles a ResponsePoint from b+ computed by `method`. Requires e_signal > 0.
ResponsePoint response_eps(double delta, const OptomechParams& p, const SteadyState& s, double e_signal,
                           Method method, const ResponseOptions& options = {});

/// A point whose response could not be evaluated; numeric fields are NaN.
ResponsePoint singular_point(double delta, const OptomechParams& p);

}  // namespace omtx
