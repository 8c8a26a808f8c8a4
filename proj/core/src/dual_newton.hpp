#pragma once

// Internal: damped dual Newton for exponential-family moment matching on a
// velocity grid. Shared by the projection oracle and the BGK discrete
// equilibrium; not part of the installed API.

#include <cstddef>
#include <vector>

#include "maxdist/grid.hpp"
#include "maxdist/vec.hpp"

namespace maxdist::detail {

/// Natural parameters of f(zeta) = exp(theta0 + theta_u . zeta + theta_e |zeta|^2 / 2).
struct ExpFamilyParams {
  double theta0 = 0.0;
  VecN theta_u = zero_vec();
  double theta_e = -1.0;
};

struct DualNewtonResult {
  std::vector<double> field;  // per-node values at the final parameters
  ExpFamilyParams theta;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // max scaled constraint residual at exit
};

/// Match the grid moments (integral f, integral zeta_k f, integral |zeta|^2/2 f)
/// to (target_rho, target_U, target_E) by Newton iteration on the natural
/// parameters, with Armijo backtracking on the dual objective
///   D(theta) = integral f_theta - theta . targets.
/// Convergence: max_i |residual_i| / max(1, |target_i|) < tol.
DualNewtonResult dual_newton_moment_match(const VelocityGrid& grid, double target_rho,
                                          const VecN& target_U, double target_E,
                                          const ExpFamilyParams& start, double tol,
                                          int max_iter);

}  // namespace maxdist::detail
