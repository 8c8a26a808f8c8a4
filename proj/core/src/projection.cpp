#include "maxdist/projection.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dual_newton.hpp"
#include "maxdist/errors.hpp"

namespace maxdist {

MomentClass::MomentClass(double rho_, double E1_, VecN U_, double V_omega_, int dim_)
    : rho(rho_), E1(E1_), U(U_), V_omega(V_omega_), dim(dim_) {
  if (dim < 1 || dim > kMaxDim) throw domain_error("moment class dimension must be 1, 2 or 3");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw domain_error("moment class density must be positive");
  if (!(E1 > 0.0) || !std::isfinite(E1)) throw domain_error("moment class energy must be positive");
  if (!(V_omega > 0.0) || !std::isfinite(V_omega))
    throw domain_error("moment class domain volume must be positive");
  for (int k = dim; k < kMaxDim; ++k) U[static_cast<std::size_t>(k)] = 0.0;
}

double MomentClass::class_temperature() const {
  const double n = static_cast<double>(dim);
  return 2.0 * E1 / (n * rho) - norm2(U, dim) / (n * rho * rho);
}

ProjectionResult project(const MomentClass& cls, double T_ref) {
  if (!(T_ref > 0.0) || !std::isfinite(T_ref))
    throw domain_error("project: reference temperature must be positive");
  const double T1 = cls.class_temperature();
  if (!(T1 > 0.0))
    throw domain_error("infeasible: T1<=0 (class energy " + std::to_string(cls.E1) +
                       " does not exceed the bulk kinetic minimum |U|^2/(2 rho) = " +
                       std::to_string(norm2(cls.U, cls.dim) / (2.0 * cls.rho)) + ")");

  VecN u1 = zero_vec();
  for (int a = 0; a < cls.dim; ++a) u1[static_cast<std::size_t>(a)] = cls.U[static_cast<std::size_t>(a)] / cls.rho;

  ProjectionResult r;
  r.T1 = T1;
  r.minimizer = MaxwellianParams(cls.rho, u1, T1, cls.V_omega, cls.dim);
  const MaxwellianParams reference(cls.rho, zero_vec(), T_ref, cls.V_omega, cls.dim);
  r.dist_min = maxwellian_F_closed(reference, T_ref) - maxwellian_F_closed(r.minimizer, T_ref);

  // Multipliers recovered from the closed form: -(lambda + nu) = 1/T1,
  // gamma_k = U_k / (rho T1), and mu from the normalization constant
  // C1 = rho / V_omega of the completed-square exponential.
  r.multipliers.nu = 1.0 / T_ref - 1.0 / T1;
  for (int a = 0; a < cls.dim; ++a)
    r.multipliers.gamma[static_cast<std::size_t>(a)] =
        cls.U[static_cast<std::size_t>(a)] / (cls.rho * T1);
  r.multipliers.mu = 1.0 + std::log(cls.rho / cls.V_omega) -
                     0.5 * cls.dim * std::log(2.0 * std::numbers::pi * T1) -
                     norm2(cls.U, cls.dim) / (2.0 * cls.rho * cls.rho * T1);
  return r;
}

OracleSolution project_oracle(const MomentClass& cls, double T_ref, const VelocityGrid& grid,
                              double tol, int max_iter) {
  if (!(T_ref > 0.0) || !std::isfinite(T_ref))
    throw domain_error("project_oracle: reference temperature must be positive");
  if (grid.dim() != cls.dim)
    throw domain_error("project_oracle: grid dimension does not match class dimension");

  // Per-unit-volume targets; the minimizer is spatially uniform.
  const double rho_v = cls.rho / cls.V_omega;
  const double E_v = cls.E1 / cls.V_omega;
  VecN U_v = zero_vec();
  for (int a = 0; a < cls.dim; ++a)
    U_v[static_cast<std::size_t>(a)] = cls.U[static_cast<std::size_t>(a)] / cls.V_omega;

  // Cold start: the reference-temperature Maxwellian matching rho
  // (nu = 0, gamma = 0, mu set by the density).
  detail::ExpFamilyParams start;
  start.theta_e = -1.0 / T_ref;
  start.theta_u = zero_vec();
  start.theta0 = std::log(rho_v) - 0.5 * cls.dim * std::log(2.0 * std::numbers::pi * T_ref);

  const detail::DualNewtonResult sol =
      detail::dual_newton_moment_match(grid, rho_v, U_v, E_v, start, tol, max_iter);
  if (!sol.converged)
    throw domain_error("projection oracle did not converge after " + std::to_string(max_iter) +
                       " iterations (max scaled residual " + std::to_string(sol.residual) +
                       "); class may be infeasible or the grid under-resolved");

  OracleSolution out;
  out.field = sol.field;
  out.iterations = sol.iterations;
  out.residual = sol.residual;
  out.multipliers.mu = sol.theta.theta0 + 1.0;
  out.multipliers.gamma = sol.theta.theta_u;
  out.multipliers.nu = sol.theta.theta_e + 1.0 / T_ref;
  return out;
}

double class_min_distance(const MomentClass& cls, double T_ref) {
  return project(cls, T_ref).dist_min;
}

}  // namespace maxdist
