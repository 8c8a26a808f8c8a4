#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "maxdist/field.hpp"

namespace maxdist {

/// One binary collision: pre-collision velocities, scattering direction, and
/// the post-collision velocities on the momentum/energy shell.
struct CollisionPair {
  VecN zeta = zero_vec();
  VecN zeta_star = zero_vec();
  VecN sigma = zero_vec();
  VecN zeta_prime = zero_vec();
  VecN zeta_star_prime = zero_vec();
};

/// Post-collision velocities
///   zeta'      = (zeta_star + zeta)/2 + sigma |zeta_star - zeta|/2,
///   zeta'_star = (zeta_star + zeta)/2 - sigma |zeta_star - zeta|/2.
/// sigma must be a unit vector (within 1e-12). Momentum is conserved to
/// round-off and energy to ~1e-12 by construction.
std::pair<VecN, VecN> sigma_transform(const VecN& zeta, const VecN& zeta_star, const VecN& sigma,
                                      int dim);

CollisionPair make_collision_pair(const VecN& zeta, const VecN& zeta_star, const VecN& sigma,
                                  int dim);

/// Brute-force discrete-velocity collision operator with unit collision
/// kernel (Maxwell pseudo-molecules):
///   Q(f,f)(zeta_i) = sum_j w_j sum_s w_s [f(zeta') f(zeta'_star) - f_i f_j],
/// where the post-collision values are read by multilinear interpolation
/// (zero outside the truncation box). Requires grid dimension 2 or 3 and at
/// most max_nodes grid nodes (O(N^2 |sphere|) cost guard).
std::vector<double> q_evaluate(std::span<const double> f, const VelocityGrid& grid,
                               const SphereRule& sphere, std::size_t max_nodes = 2048);

/// Quadratures of Q against the collision invariants 1, zeta_k, |zeta|^2,
/// plus the norms used to scale them.
struct QInvariants {
  double mass = 0.0;
  VecN momentum = zero_vec();
  double energy = 0.0;
  double q_l1 = 0.0;       // integral of |Q|
  double q_maxnorm = 0.0;  // max_i |Q_i|
};

QInvariants q_invariants(std::span<const double> q, const VelocityGrid& grid);

/// One explicit-Euler BGK relaxation step, cellwise:
///   f_new = f + (dt/tau) (M_loc - f),
/// where M_loc is the cell's discrete equilibrium: the exponential-family
/// density whose grid moments match the cell's grid moments (rho, u, E) to
/// round-off. That matching makes mass, momentum and energy conservation and
/// the entropy increase exact in the discrete system. Requires
/// 0 < dt <= tau/2 (positivity); empty cells are skipped.
DistributionField bgk_step(const DistributionField& f, double tau, double dt);

/// Time series of the monitored quantities along a BGK relaxation run.
struct RelaxationTrace {
  std::vector<double> times;
  std::vector<double> S_values;
  std::vector<double> F_values;
  std::vector<double> dist_values;
  std::vector<double> rho_values;
  std::vector<double> E_values;

  std::size_t rows() const { return times.size(); }
};

/// Iterate bgk_step from f0 for the given number of steps, recording entropy,
/// the functional F (with the reference temperature M.T), the distance to M,
/// and the conserved totals at t = 0 and after every step (steps+1 rows).
/// The equal-density precondition is checked once at t = 0; BGK conserves
/// mass, so it holds along the whole trajectory.
RelaxationTrace relax(const DistributionField& f0, const MaxwellianParams& M, double tau,
                      double dt, int steps);

/// CSV export with header "t,S,F,dist,rho,E", one row per recorded step.
void write_trace_csv(std::ostream& os, const RelaxationTrace& trace);
void write_trace_csv_file(const std::string& path, const RelaxationTrace& trace);

}  // namespace maxdist
