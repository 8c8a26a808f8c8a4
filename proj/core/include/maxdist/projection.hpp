#pragma once

#include <vector>

#include "maxdist/field.hpp"
#include "maxdist/functionals.hpp"

namespace maxdist {

/// Constraint data of the moment class: non-negative distributions with the
/// given total density, total energy and total moment vector on a domain of
/// volume V_omega.
struct MomentClass {
  double rho = 1.0;
  double E1 = 1.0;
  VecN U = zero_vec();
  double V_omega = 1.0;
  int dim = 1;

  MomentClass() = default;
  MomentClass(double rho_, double E1_, VecN U_, double V_omega_, int dim_);

  /// Temperature of the nearest Maxwellian:
  ///   T1 = 2 E1 / (n rho) - |U|^2 / (n rho^2).
  /// The class is feasible iff T1 > 0, i.e. the energy exceeds the bulk
  /// kinetic minimum |U|^2 / (2 rho).
  double class_temperature() const;
  bool feasible() const { return class_temperature() > 0.0; }
};

/// Lagrange multipliers of the constrained extremal problem, in the
/// normalization where the stationarity condition reads
///   (lambda + nu) |zeta|^2/2 - log f - 1 + mu + sum_k gamma_k zeta_k = 0
/// with lambda = -1/T_ref fixed. At the solution -(lambda + nu) = 1/T1 and
/// gamma_k / (lambda + nu) = -U_k / rho.
struct Multipliers {
  double nu = 0.0;
  VecN gamma = zero_vec();
  double mu = 0.0;
};

struct ProjectionResult {
  MaxwellianParams minimizer;  // drift U/rho, temperature T1, the class's rho and V
  double T1 = 0.0;
  double dist_min = 0.0;  // distance from the reference Maxwellian to the minimizer
  Multipliers multipliers;
};

/// Closed-form solution of the extremal problem: the Maxwellian with drift
/// U/rho and temperature T1 minimizes the distance to the reference
/// (zero-drift, temperature T_ref) Maxwellian over the class. Throws
/// domain_error("infeasible: T1<=0 ...") when the class is infeasible.
ProjectionResult project(const MomentClass& cls, double T_ref);

struct OracleSolution {
  std::vector<double> field;  // per-node values, same normalization as maxwellian_eval
  Multipliers multipliers;
  int iterations = 0;
  double residual = 0.0;
};

/// Independent numerical check: solves the discretized constrained problem
/// directly by Newton iteration on the dual (the multipliers), starting cold
/// from the reference-temperature Maxwellian matching rho. Converges when all
/// constraint residuals drop below tol; throws domain_error after max_iter
/// iterations without convergence (infeasible class or under-resolved grid).
OracleSolution project_oracle(const MomentClass& cls, double T_ref, const VelocityGrid& grid,
                              double tol = 1e-10, int max_iter = 200);

/// The infimum of the distance over the class, attained at the minimizer.
double class_min_distance(const MomentClass& cls, double T_ref);

}  // namespace maxdist
