#include "maxdist/functionals.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "maxdist/errors.hpp"

namespace maxdist {

std::string to_string(DistanceReport::Method m) {
  return m == DistanceReport::Method::difference ? "difference" : "bregman";
}

double functional_F(const DistributionField& f, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw domain_error("functional F: temperature must be positive");
  const VelocityGrid& grid = f.grid();
  const std::span<const double> sq = grid.sq_norms();
  const double inv2T = 1.0 / (2.0 * T);
  double acc = 0.0;
  for (std::size_t c = 0; c < f.domain().cell_count(); ++c) {
    const std::span<const double> v = f.cell_values(c);
    acc += f.domain().cell_volume(c) * grid.integrate_terms([&](std::size_t i) {
      const double x = v[i];
      if (x < kEntropyFloor) return 0.0;
      return -(sq[i] * inv2T + std::log(x)) * x;
    });
  }
  return acc;
}

double maxwellian_F_closed(const MaxwellianParams& p, double T_ref) {
  if (!(T_ref > 0.0) || !std::isfinite(T_ref))
    throw domain_error("closed-form F: reference temperature must be positive");
  const double log_pref = std::log(p.rho) - std::log(p.V_omega) -
                          0.5 * p.dim * std::log(2.0 * std::numbers::pi * p.T);
  const double zero_drift =
      -p.rho * (log_pref - 0.5 * p.dim * (1.0 - p.T / T_ref));
  return zero_drift - p.rho * norm2(p.u, p.dim) / (2.0 * T_ref);
}

namespace {

void check_density_match(double rho_M, double rho_f, double rel_tol) {
  const double scale = std::max(std::abs(rho_M), 1e-300);
  if (std::abs(rho_f - rho_M) > rel_tol * scale)
    throw domain_error("density mismatch: reference Maxwellian has total density " +
                       std::to_string(rho_M) + " but field has " + std::to_string(rho_f) +
                       " (relative tolerance " + std::to_string(rel_tol) + ")");
}

void check_reference(const MaxwellianParams& M, const DistributionField& f) {
  if (M.dim != f.grid().dim())
    throw domain_error("distance: reference dimension does not match field grid dimension");
  if (norm2(M.u, M.dim) != 0.0)
    throw domain_error("distance: the reference Maxwellian must have zero drift; "
                       "the distance functional is defined against the stationary "
                       "zero-drift equilibrium");
}

}  // namespace

DistanceReport distance(const MaxwellianParams& M, const DistributionField& f, double T,
                        double rel_tol_density) {
  if (T != M.T)
    throw domain_error("distance: temperature argument must equal the reference Maxwellian's T");
  check_reference(M, f);
  const MomentSummary ms = moments(f);
  check_density_match(M.rho, ms.rho_total, rel_tol_density);
  DistanceReport r;
  r.method = DistanceReport::Method::difference;
  r.rho_M = M.rho;
  r.rho_f = ms.rho_total;
  r.F_M = maxwellian_F_closed(M, M.T);
  r.F_f = functional_F(f, M.T);
  r.dist = r.F_M - r.F_f;
  return r;
}

DistanceReport distance(const MaxwellianParams& M, const DistributionField& f) {
  return distance(M, f, M.T);
}

double bregman_integrand(double f_value, double m_value) {
  const double x = std::max(f_value / m_value, kEntropyFloor);
  return m_value * (1.0 - x + x * std::log(x));
}

DistanceReport distance_bregman(const MaxwellianParams& M, const DistributionField& f,
                                double rel_tol_density) {
  check_reference(M, f);
  const MomentSummary ms = moments(f);
  check_density_match(M.rho, ms.rho_total, rel_tol_density);

  const VelocityGrid& grid = f.grid();
  const double pref = M.prefactor();
  const double inv2T = 1.0 / (2.0 * M.T);
  const std::span<const double> sq = grid.sq_norms();
  double acc = 0.0;
  for (std::size_t c = 0; c < f.domain().cell_count(); ++c) {
    const std::span<const double> v = f.cell_values(c);
    acc += f.domain().cell_volume(c) * grid.integrate_terms([&](std::size_t i) {
      const double m_val = pref * std::exp(-sq[i] * inv2T);
      return bregman_integrand(v[i], m_val);
    });
  }

  DistanceReport r;
  r.method = DistanceReport::Method::bregman;
  r.rho_M = M.rho;
  r.rho_f = ms.rho_total;
  r.dist = acc;
  r.F_M = maxwellian_F_closed(M, M.T);
  r.F_f = r.F_M - acc;
  return r;
}

double maxwellian_distance_closed(double T, double T1, double rho, int dim) {
  if (!(T > 0.0) || !(T1 > 0.0) || !(rho > 0.0))
    throw domain_error("Maxwellian distance: T, T1 and rho must be positive");
  if (dim < 1 || dim > kMaxDim) throw domain_error("Maxwellian distance: dimension must be 1, 2 or 3");
  const double ratio = T1 / T;
  return -0.5 * rho * static_cast<double>(dim) * (std::log(ratio) - ratio + 1.0);
}

DistanceBoundPair class_distance_bound(double T, double T1, double rho, const VecN& U, int dim) {
  const double base = maxwellian_distance_closed(T, T1, rho, dim);
  const double u2 = norm2(U, dim);
  DistanceBoundPair b;
  b.via_class_temperature = base + u2 / (2.0 * rho * T1);
  b.via_reference_temperature = base + u2 / (2.0 * rho * T);
  return b;
}

}  // namespace maxdist
