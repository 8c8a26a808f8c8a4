#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "maxdist/errors.hpp"
#include "maxdist/vec.hpp"

namespace maxdist {

/// Uniform symmetric midpoint tensor grid over the velocity box [-L, L]^n.
///
/// Node k along an axis sits at -L + (k + 1/2) * (2L/m); every node carries
/// the same weight (2L/m)^n, so the weights sum to (2L)^n. Axis coordinates
/// are mirrored bit-exactly (coord[m-1-k] = -coord[k]), which keeps the node
/// set closed under reflection and makes odd-moment quadrature of even fields
/// vanish exactly (see integrate()).
class VelocityGrid {
 public:
  VelocityGrid(int dim, double half_width, int points_per_axis);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int points_per_axis() const { return points_per_axis_; }
  std::size_t node_count() const { return node_count_; }
  double spacing() const { return spacing_; }
  /// Weight shared by every node: spacing^dim.
  double node_weight() const { return node_weight_; }

  double axis_coord(int k) const { return axis_coords_[static_cast<std::size_t>(k)]; }
  std::span<const double> axis_coords() const { return axis_coords_; }

  /// Flat node coordinates, stride dim(), node-major.
  std::span<const double> coords() const { return coords_; }
  VecN node(std::size_t i) const;
  std::span<const double> weights() const { return weights_; }
  /// |zeta|^2 per node.
  std::span<const double> sq_norms() const { return sq_norms_; }

  /// Index of the node at -zeta_i. An involution; exact by construction.
  std::size_t reflected_index(std::size_t i) const;

  /// Quadrature sum w_i * values[i]. Nodes are accumulated in reflection
  /// pairs so that an odd integrand cancels exactly, not just to round-off.
  double integrate(std::span<const double> values) const;

  /// Same pairing scheme for an integrand given as a callable i -> term_i.
  template <class TermFn>
  double integrate_terms(TermFn&& term) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < node_count_; ++i) {
      const std::size_t r = reflected_index(i);
      if (r < i) continue;  // pair already handled
      acc += (r == i) ? term(i) : term(i) + term(r);
    }
    return node_weight_ * acc;
  }

  /// Multilinear interpolation of per-node values at an arbitrary point.
  /// Points outside the truncation box read as zero.
  double interpolate(std::span<const double> values, const double* point) const;

 private:
  int dim_;
  double half_width_;
  int points_per_axis_;
  std::size_t node_count_;
  double spacing_;
  double node_weight_;
  std::vector<double> axis_coords_;
  std::vector<double> coords_;
  std::vector<double> weights_;
  std::vector<double> sq_norms_;
};

/// Bounded spatial box as a flat list of cell volumes; a single cell is the
/// spatially homogeneous setting.
class SpatialDomain {
 public:
  SpatialDomain(int spatial_dim, std::vector<double> cell_volumes);

  static SpatialDomain homogeneous(double total_volume);
  static SpatialDomain uniform(int spatial_dim, std::size_t cells, double total_volume);

  int spatial_dim() const { return spatial_dim_; }
  std::size_t cell_count() const { return cell_volumes_.size(); }
  double cell_volume(std::size_t c) const { return cell_volumes_[c]; }
  std::span<const double> cell_volumes() const { return cell_volumes_; }
  double total_volume() const { return total_volume_; }

 private:
  int spatial_dim_;
  std::vector<double> cell_volumes_;
  double total_volume_;
};

/// Angular quadrature on the unit sphere S^{n-1}, n in {2, 3}.
/// n=2: equispaced points on the circle, weight 2*pi/k each.
/// n=3: Fibonacci spiral point set, weight 4*pi/k each.
class SphereRule {
 public:
  SphereRule(int dim, int count);

  int dim() const { return dim_; }
  std::size_t size() const { return directions_.size(); }
  const VecN& direction(std::size_t i) const { return directions_[i]; }
  double weight(std::size_t /*i*/) const { return weight_; }
  /// Weight shared by every direction.
  double uniform_weight() const { return weight_; }
  double weight_sum() const { return weight_ * static_cast<double>(directions_.size()); }

 private:
  int dim_;
  double weight_;
  std::vector<VecN> directions_;
};

inline VelocityGrid make_velocity_grid(int dim, double half_width, int points_per_axis) {
  return VelocityGrid(dim, half_width, points_per_axis);
}

inline SphereRule make_sphere_rule(int dim, int count) { return SphereRule(dim, count); }

inline double integrate(const VelocityGrid& grid, std::span<const double> values) {
  return grid.integrate(values);
}

}  // namespace maxdist
