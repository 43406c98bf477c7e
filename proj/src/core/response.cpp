#include "omtx/response.hpp"

#include <cmath>
#include <limits>

#include "omtx/errors.hpp"
#include "omtx/oracles/linearized.hpp"

namespace omtx {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed";
        case Method::linearized: return "linearized";
        case Method::time_domain: return "timedomain";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view text) {
    if (text == "closed" || text == "closed_form") return Method::closed_form;
    if (text == "linearized") return Method::linearized;
    if (text == "timedomain" || text == "time_domain") return Method::time_domain;
    return std::nullopt;
}

cplx b_plus(Method method, double delta, const OptomechParams& p, const SteadyState& s, double e_signal,
            const ResponseOptions& options) {
    switch (method) {
        case Method::closed_form:
            return b_plus_closed_form(delta, p, s.w0, e_signal, options.singular_floor);
        case Method::linearized:
            return oracles::linearized_response(delta, p, s, e_signal).b_plus;
        case Method::time_domain:
            return oracles::time_domain_response(delta, p, s, e_signal, options.time_domain).demod.b_plus_est;
    }
    throw InvalidArgument("unknown method");
}

ResponsePoint response_eps(double delta, const OptomechParams& p, const SteadyState& s, double e_signal,
                           Method method, const ResponseOptions& options) {
    if (!(e_signal > 0.0)) throw InvalidArgument("response_eps: e_signal must be > 0");
    ResponsePoint r;
    r.delta = delta;
    r.delta_s = delta - p.delta_p;
    r.b_plus = b_plus(method, delta, p, s, e_signal, options);
    r.b_out_plus = output_field(r.b_plus, p.kappa);
    r.eps_t = 2.0 * p.kappa * r.b_plus / e_signal;
    r.power_response = std::norm(r.eps_t);
    return r;
}

ResponsePoint singular_point(double delta, const OptomechParams& p) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    ResponsePoint r;
    r.delta = delta;
    r.delta_s = delta - p.delta_p;
    r.b_plus = r.b_out_plus = r.eps_t = cplx{nan, nan};
    r.power_response = nan;
    r.singular = true;
    return r;
}

}  // namespace omtx
