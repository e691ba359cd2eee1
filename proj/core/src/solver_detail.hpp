#pragma once

#include "einhom/solvers.hpp"

namespace einhom::detail {

/// Runs verify_einstein and flags the solution when the residual is too large.
void certify(EinsteinSolution& sol, const SolverOptions& opts);

/// Residual of the polynomial system for a metric on blocks (k1, k2, k3), s = 2.
double full_residual_of(const MetricParams& metric);

void add_note(EinsteinSolution& sol, const std::string& text);

}  // namespace einhom::detail
