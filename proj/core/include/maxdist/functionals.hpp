#pragma once

#include <string>

#include "maxdist/field.hpp"

namespace maxdist {

/// Default relative tolerance for the equal-total-density precondition of the
/// distance functional. The distance is only defined on the equal-density
/// class, so violations are a hard error.
inline constexpr double kDefaultDensityRelTol = 1e-6;

/// Result of a distance evaluation dist{M, f} = F(M) - F(f).
struct DistanceReport {
  enum class Method { difference, bregman };

  double F_M = 0.0;
  double F_f = 0.0;
  double dist = 0.0;
  double rho_M = 0.0;
  double rho_f = 0.0;
  Method method = Method::difference;
};

std::string to_string(DistanceReport::Method m);

/// F(f) = -E(f)/T + S(f), evaluated as the single quadrature
/// -integral of (|zeta|^2/(2T) + log f) f over phase space.
double functional_F(const DistributionField& f, double T);

/// Analytic F at a Maxwellian with parameters p, with the energy weight fixed
/// by the reference temperature T_ref (lambda = -1/T_ref).
///
/// Derivation: E = rho (n T1 + |u|^2)/2 and S = rho (n/2 - log(rho/(V (2 pi T1)^{n/2}))),
/// both by Gaussian quadrature closed forms, so
///   F = -E/T_ref + S
///     = -rho [ log(rho/(V (2 pi T1)^{n/2})) - n (1 - T1/T_ref)/2 ] - rho |u|^2 / (2 T_ref).
/// For u = 0, T1 = T_ref this collapses to -rho log(rho/(V (2 pi T_ref)^{n/2})).
double maxwellian_F_closed(const MaxwellianParams& p, double T_ref);

/// dist{M, f} = F(M) - F(f), evaluated as the difference of the closed form
/// at M and the quadrature at f.
///
/// Preconditions: the total densities of M and f agree within rel_tol_density
/// (relative); T equals M.T; the reference M has zero drift (the functional is
/// maximized by the zero-drift Maxwellian, so the non-negativity of the
/// distance only holds against that reference).
DistanceReport distance(const MaxwellianParams& M, const DistributionField& f, double T,
                        double rel_tol_density = kDefaultDensityRelTol);
DistanceReport distance(const MaxwellianParams& M, const DistributionField& f);

/// Same distance via the pointwise non-negative integrand
///   M (1 - f/M + (f/M) log(f/M)),
/// a sum of non-negative terms, numerically preferable when f is close to M.
/// f/M is floored at 1e-300 before the log.
DistanceReport distance_bregman(const MaxwellianParams& M, const DistributionField& f,
                                double rel_tol_density = kDefaultDensityRelTol);

/// Pointwise Bregman integrand value for a single (f, M) pair of values.
double bregman_integrand(double f_value, double m_value);

/// Closed-form distance between two zero-drift Maxwellians sharing (rho, V):
///   dist{M_T, M_T1} = -rho n (log(T1/T) - T1/T + 1) / 2.
/// Non-negative; zero iff T1 == T; depends on the temperatures only via T1/T.
double maxwellian_distance_closed(double T, double T1, double rho, int dim);

/// The two variants of the lower bound for dist{M, f} over the moment class
/// with data (rho, E1, U): both share the first term
///   -(n rho / 2)(log(T1/T) - T1/T + 1)
/// and differ in the temperature dividing the drift term.
struct DistanceBoundPair {
  /// First term + |U|^2 / (2 rho T1)  (class temperature in the drift term).
  double via_class_temperature = 0.0;
  /// First term + |U|^2 / (2 rho T)   (reference temperature in the drift term).
  /// Direct evaluation of dist{M, M1} for the drifted minimizer yields this one.
  double via_reference_temperature = 0.0;
};

DistanceBoundPair class_distance_bound(double T, double T1, double rho, const VecN& U, int dim);

}  // namespace maxdist
