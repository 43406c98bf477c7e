#pragma once

#include <filesystem>

#include "omtx/io/config.hpp"
#include "omtx/io/report.hpp"

namespace omtx::io {

/// Runs the oracle cross-checks for the configured model and writes
/// `conformance_report.json` and `conformance_map.csv` into `out_dir`.
///
/// Checks: bare-cavity limit of the closed form, steady-state cubic integrity
/// on random samples, closed-form denominator against the linearized
/// determinant, linearized against time-domain response, closed form against
/// linearized (the conformance map), Jacobian trace identity, uncoupled
/// eigenvalues, and threshold consistency between a transistor sweep and
/// bisection.
ConformanceReport run_validation(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace omtx::io
