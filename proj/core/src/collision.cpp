#include "maxdist/collision.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>

#include "dual_newton.hpp"
#include "maxdist/errors.hpp"
#include "maxdist/functionals.hpp"

namespace maxdist {

std::pair<VecN, VecN> sigma_transform(const VecN& zeta, const VecN& zeta_star, const VecN& sigma,
                                      int dim) {
  if (std::abs(norm(sigma, dim) - 1.0) > 1e-12)
    throw domain_error("sigma_transform: sigma must be a unit vector");
  VecN center = zero_vec();
  double rel2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    const std::size_t k = static_cast<std::size_t>(a);
    center[k] = 0.5 * (zeta_star[k] + zeta[k]);
    const double d = zeta_star[k] - zeta[k];
    rel2 += d * d;
  }
  const double half = 0.5 * std::sqrt(rel2);
  VecN prime = zero_vec();
  VecN star_prime = zero_vec();
  for (int a = 0; a < dim; ++a) {
    const std::size_t k = static_cast<std::size_t>(a);
    const double t = sigma[k] * half;
    prime[k] = center[k] + t;
    star_prime[k] = center[k] - t;
  }
  return {prime, star_prime};
}

CollisionPair make_collision_pair(const VecN& zeta, const VecN& zeta_star, const VecN& sigma,
                                  int dim) {
  CollisionPair p;
  p.zeta = zeta;
  p.zeta_star = zeta_star;
  p.sigma = sigma;
  auto [prime, star_prime] = sigma_transform(zeta, zeta_star, sigma, dim);
  p.zeta_prime = prime;
  p.zeta_star_prime = star_prime;
  return p;
}

std::vector<double> q_evaluate(std::span<const double> f, const VelocityGrid& grid,
                               const SphereRule& sphere, std::size_t max_nodes) {
  const int n = grid.dim();
  if (n < 2)
    throw domain_error("collision operator requires velocity dimension 2 or 3; the scattering "
                       "sphere degenerates in dimension 1");
  if (sphere.dim() != n)
    throw domain_error("collision operator: sphere rule dimension does not match the grid");
  const std::size_t N = grid.node_count();
  if (f.size() != N) throw domain_error("collision operator: field length does not match the grid");
  if (N > max_nodes)
    throw domain_error("collision operator: grid has " + std::to_string(N) +
                       " nodes, above the cost guard of " + std::to_string(max_nodes) +
                       " (O(N^2 |sphere|) work)");
  for (std::size_t i = 0; i < N; ++i)
    if (!std::isfinite(f[i]) || f[i] < 0.0)
      throw domain_error("collision operator: field must be finite and non-negative");

  const std::span<const double> coords = grid.coords();
  const double w_node = grid.node_weight();
  const double w_sigma = sphere.uniform_weight();
  const double sphere_measure = sphere.weight_sum();
  const std::size_t n_sigma = sphere.size();

  std::vector<double> q(N, 0.0);
  double center[kMaxDim];
  double p1[kMaxDim];
  double p2[kMaxDim];
  // The sigma-averaged gain is symmetric in (i, j): swapping the pair swaps
  // zeta' and zeta'_star, which the product does not see. Do j >= i only.
  for (std::size_t i = 0; i < N; ++i) {
    const double* zi = &coords[i * static_cast<std::size_t>(n)];
    for (std::size_t j = i; j < N; ++j) {
      const double* zj = &coords[j * static_cast<std::size_t>(n)];
      double rel2 = 0.0;
      for (int a = 0; a < n; ++a) {
        center[a] = 0.5 * (zi[a] + zj[a]);
        const double d = zj[a] - zi[a];
        rel2 += d * d;
      }
      const double half = 0.5 * std::sqrt(rel2);
      double gain = 0.0;
      for (std::size_t s = 0; s < n_sigma; ++s) {
        const VecN& sig = sphere.direction(s);
        for (int a = 0; a < n; ++a) {
          const double t = sig[static_cast<std::size_t>(a)] * half;
          p1[a] = center[a] + t;
          p2[a] = center[a] - t;
        }
        gain += grid.interpolate(f, p1) * grid.interpolate(f, p2);
      }
      const double kernel = w_sigma * gain - sphere_measure * f[i] * f[j];
      q[i] += w_node * kernel;
      if (j != i) q[j] += w_node * kernel;
    }
  }
  return q;
}

QInvariants q_invariants(std::span<const double> q, const VelocityGrid& grid) {
  QInvariants inv;
  const int n = grid.dim();
  const std::span<const double> coords = grid.coords();
  const std::span<const double> sq = grid.sq_norms();
  inv.mass = grid.integrate_terms([&](std::size_t i) { return q[i]; });
  for (int a = 0; a < n; ++a)
    inv.momentum[static_cast<std::size_t>(a)] = grid.integrate_terms([&](std::size_t i) {
      return coords[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(a)] * q[i];
    });
  inv.energy = grid.integrate_terms([&](std::size_t i) { return sq[i] * q[i]; });
  inv.q_l1 = grid.integrate_terms([&](std::size_t i) { return std::abs(q[i]); });
  for (std::size_t i = 0; i < q.size(); ++i) inv.q_maxnorm = std::max(inv.q_maxnorm, std::abs(q[i]));
  return inv;
}

namespace {

/// Discrete cell equilibrium: exponential-family density whose grid moments
/// match the cell's grid moments. Seeded with the analytic local Maxwellian;
/// a couple of Newton iterations remove the quadrature mismatch.
std::vector<double> discrete_equilibrium(const VelocityGrid& grid, const CellMoments& cm) {
  if (!(cm.T > 0.0))
    throw domain_error("BGK step: cell temperature is not positive (distribution concentrated "
                       "on a single node?)");
  detail::ExpFamilyParams start;
  start.theta_e = -1.0 / cm.T;
  for (int a = 0; a < grid.dim(); ++a)
    start.theta_u[static_cast<std::size_t>(a)] = cm.u[static_cast<std::size_t>(a)] / cm.T;
  start.theta0 = std::log(cm.rho) - 0.5 * grid.dim() * std::log(2.0 * std::numbers::pi * cm.T) -
                 norm2(cm.u, grid.dim()) / (2.0 * cm.T);

  VecN U = cm.u;
  for (int a = 0; a < grid.dim(); ++a) U[static_cast<std::size_t>(a)] *= cm.rho;
  const detail::DualNewtonResult sol =
      detail::dual_newton_moment_match(grid, cm.rho, U, cm.E, start, 1e-13, 50);
  if (!sol.converged && sol.residual > 1e-10)
    throw domain_error("BGK step: discrete equilibrium fit did not converge (residual " +
                       std::to_string(sol.residual) + "); grid too coarse for this cell state");
  return sol.field;
}

}  // namespace

DistributionField bgk_step(const DistributionField& f, double tau, double dt) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw domain_error("BGK step: tau must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw domain_error("BGK step: dt must be positive");
  if (dt > 0.5 * tau)
    throw domain_error("BGK step: dt must satisfy dt <= tau/2 (positivity of the explicit step)");

  const VelocityGrid& grid = f.grid();
  const std::size_t N = grid.node_count();
  const double alpha = dt / tau;
  std::vector<double> out(f.values().begin(), f.values().end());
  for (std::size_t c = 0; c < f.domain().cell_count(); ++c) {
    const std::span<const double> v = f.cell_values(c);
    const CellMoments cm = cell_moments(grid, v);
    if (cm.rho == 0.0) continue;  // empty cell: no collisions, no-op
    const std::vector<double> eq = discrete_equilibrium(grid, cm);
    double* dst = out.data() + c * N;
    for (std::size_t i = 0; i < N; ++i) dst[i] = v[i] + alpha * (eq[i] - v[i]);
  }
  return DistributionField(f.grid_ptr(), f.domain_ptr(), std::move(out));
}

RelaxationTrace relax(const DistributionField& f0, const MaxwellianParams& M, double tau,
                      double dt, int steps) {
  if (steps < 0) throw domain_error("relax: steps must be >= 0");
  // Density precondition, checked once at t = 0.
  const DistanceReport d0 = distance(M, f0);
  const double F_M = d0.F_M;

  RelaxationTrace tr;
  tr.times.reserve(static_cast<std::size_t>(steps) + 1);

  DistributionField f = f0;
  for (int k = 0; k <= steps; ++k) {
    if (k > 0) f = bgk_step(f, tau, dt);
    const MomentSummary ms = moments(f);
    const double F_f = -ms.E_total / M.T + ms.S;
    tr.times.push_back(dt * static_cast<double>(k));
    tr.S_values.push_back(ms.S);
    tr.F_values.push_back(F_f);
    tr.dist_values.push_back(F_M - F_f);
    tr.rho_values.push_back(ms.rho_total);
    tr.E_values.push_back(ms.E_total);
  }
  return tr;
}

void write_trace_csv(std::ostream& os, const RelaxationTrace& trace) {
  os << "t,S,F,dist,rho,E\n";
  char buf[32];
  for (std::size_t r = 0; r < trace.rows(); ++r) {
    const double row[6] = {trace.times[r],       trace.S_values[r],   trace.F_values[r],
                           trace.dist_values[r], trace.rho_values[r], trace.E_values[r]};
    for (int c = 0; c < 6; ++c) {
      std::snprintf(buf, sizeof buf, "%.12g", row[c] == 0.0 ? 0.0 : row[c]);
      os << buf << (c == 5 ? '\n' : ',');
    }
  }
}

void write_trace_csv_file(const std::string& path, const RelaxationTrace& trace) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot write trace file: " + path);
  write_trace_csv(os, trace);
  if (!os) throw io_error("write failed for trace file: " + path);
}

}  // namespace maxdist
