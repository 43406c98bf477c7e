#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "omtx/params.hpp"

namespace omtx {

enum class Branch { lower, middle, upper };

std::string_view to_string(Branch b);

/// One pump-driven fixed point of the semiclassical equations.
struct SteadyState {
    double w0 = 0.0;              ///< intracavity photon number |b0|^2
    std::complex<double> b0{};    ///< steady field, pump phase taken real
    double q0 = 0.0;              ///< steady displacement G0 w0 / wm
    Branch branch = Branch::lower;
    bool stable = true;           ///< all Jacobian eigenvalues in the left half plane
    bool degenerate = false;      ///< double root of the cubic, reported once
    double leading_re = 0.0;      ///< largest eigenvalue real part
};

/// Left-hand side of the photon-number equation minus E_p^2:
///   w [kappa^2 + (Delta_p - G0^2 w / wm)^2] - E_p^2.
double steady_state_residual(const OptomechParams& p, double e_pump, double w0);

/// Fixed point at a given photon number, with b0 = E_p / (kappa + i(Delta_p - G0^2 w0/wm))
/// and its stability. Does not check that w0 is a root.
SteadyState make_steady_state(const OptomechParams& p, double e_pump, double w0, Branch branch,
                              bool degenerate = false);

/// All non-negative real roots of the steady-state cubic, ascending. Roots are
/// bracketed between the critical points of the cubic and refined by
/// safeguarded Newton iteration; a double root is reported once with
/// `degenerate` set. Always returns at least one root.
std::vector<SteadyState> steady_state_roots(const OptomechParams& p, double e_pump);

struct BranchPolicy {
    enum class Kind { lowest, highest, continuation };
    Kind kind = Kind::lowest;
    double previous_w0 = 0.0;  ///< only used by continuation

    static BranchPolicy lowest() { return {Kind::lowest, 0.0}; }
    static BranchPolicy highest() { return {Kind::highest, 0.0}; }
    static BranchPolicy continuation(double previous_w0) { return {Kind::continuation, previous_w0}; }

    bool operator==(const BranchPolicy&) const = default;
};

/// Throws InvalidArgument on an empty list.
SteadyState select_branch(const std::vector<SteadyState>& roots, const BranchPolicy& policy);

}  // namespace omtx
