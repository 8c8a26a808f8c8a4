#include "dual_newton.hpp"

#include <cmath>
#include <limits>

#include "maxdist/errors.hpp"

namespace maxdist::detail {

namespace {

constexpr double kExpCap = 690.0;  // beyond this exp() overflows; treat as infinite dual

// Cholesky solve for the (d x d) SPD Gram matrix, d <= 5.
bool cholesky_solve(double a[5][5], double b[5], int d) {
  double l[5][5] = {};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0.0) return false;
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  for (int i = 0; i < d; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l[i][k] * b[k];
    b[i] = s / l[i][i];
  }
  for (int i = d - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < d; ++k) s -= l[k][i] * b[k];
    b[i] = s / l[i][i];
  }
  return true;
}

}  // namespace

DualNewtonResult dual_newton_moment_match(const VelocityGrid& grid, double target_rho,
                                          const VecN& target_U, double target_E,
                                          const ExpFamilyParams& start, double tol,
                                          int max_iter) {
  const int n = grid.dim();
  const int d = n + 2;  // theta0, theta_u[0..n), theta_e
  const std::size_t N = grid.node_count();
  const std::span<const double> coords = grid.coords();
  const std::span<const double> sq = grid.sq_norms();
  const double w = grid.node_weight();

  double theta[5] = {};
  theta[0] = start.theta0;
  for (int a = 0; a < n; ++a) theta[1 + a] = start.theta_u[static_cast<std::size_t>(a)];
  theta[d - 1] = start.theta_e;

  double target[5] = {};
  target[0] = target_rho;
  for (int a = 0; a < n; ++a) target[1 + a] = target_U[static_cast<std::size_t>(a)];
  target[d - 1] = target_E;
  double scale[5];
  for (int i = 0; i < d; ++i) scale[i] = std::max(1.0, std::abs(target[i]));

  std::vector<double> field(N, 0.0);

  // Evaluate field and dual objective D = integral f - theta . target.
  auto eval_dual = [&](const double th[5], std::vector<double>& out) -> double {
    double mass = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double e = th[0] + 0.5 * th[d - 1] * sq[i];
      for (int a = 0; a < n; ++a)
        e += th[1 + a] * coords[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(a)];
      if (e > kExpCap) return std::numeric_limits<double>::infinity();
      out[i] = std::exp(e);
      mass += out[i];
    }
    double dual = w * mass;
    for (int i = 0; i < d; ++i) dual -= th[i] * target[i];
    return dual;
  };

  double dual = eval_dual(theta, field);
  if (!std::isfinite(dual))
    throw domain_error("moment matching: starting parameters overflow the exponential family");

  DualNewtonResult result;
  for (int iter = 0; iter <= max_iter; ++iter) {
    // Moments and Gram matrix of the basis (1, zeta_k, |zeta|^2/2) under f.
    double mom[5] = {};
    double gram[5][5] = {};
    for (std::size_t i = 0; i < N; ++i) {
      const double fi = field[i];
      double phi[5];
      phi[0] = 1.0;
      for (int a = 0; a < n; ++a)
        phi[1 + a] = coords[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(a)];
      phi[d - 1] = 0.5 * sq[i];
      for (int r = 0; r < d; ++r) {
        mom[r] += phi[r] * fi;
        for (int c = 0; c <= r; ++c) gram[r][c] += phi[r] * phi[c] * fi;
      }
    }
    double res[5];
    double max_res = 0.0;
    for (int r = 0; r < d; ++r) {
      mom[r] *= w;
      res[r] = mom[r] - target[r];
      max_res = std::max(max_res, std::abs(res[r]) / scale[r]);
      for (int c = 0; c <= r; ++c) {
        gram[r][c] *= w;
        gram[c][r] = gram[r][c];
      }
    }

    result.iterations = iter;
    result.residual = max_res;
    if (max_res < tol) {
      result.converged = true;
      break;
    }
    if (iter == max_iter) break;

    double step[5];
    for (int r = 0; r < d; ++r) step[r] = -res[r];
    if (!cholesky_solve(gram, step, d)) break;  // Gram not SPD: grid too degenerate

    // Armijo backtracking on the dual objective; directional derivative is
    // grad D . step = res . step. The round-off slack keeps the test from
    // rejecting steps once the predicted decrease falls below machine
    // precision of D, where quadratic convergence has already set in.
    double slope = 0.0;
    for (int r = 0; r < d; ++r) slope += res[r] * step[r];
    const double slack = 1e-14 * std::abs(dual) + 1e-300;
    double t = 1.0;
    std::vector<double> trial(N);
    double trial_theta[5];
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (int r = 0; r < d; ++r) trial_theta[r] = theta[r] + t * step[r];
      const double trial_dual = eval_dual(trial_theta, trial);
      if (std::isfinite(trial_dual) && trial_dual <= dual + 1e-4 * t * slope + slack) {
        for (int r = 0; r < d; ++r) theta[r] = trial_theta[r];
        field.swap(trial);
        dual = trial_dual;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // stalled; report best residual so far
  }

  result.theta.theta0 = theta[0];
  for (int a = 0; a < n; ++a) result.theta.theta_u[static_cast<std::size_t>(a)] = theta[1 + a];
  result.theta.theta_e = theta[d - 1];
  result.field = std::move(field);
  return result;
}

}  // namespace maxdist::detail
