#include "maxdist/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace maxdist {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

VelocityGrid::VelocityGrid(int dim, double half_width, int points_per_axis)
    : dim_(dim), half_width_(half_width), points_per_axis_(points_per_axis) {
  if (dim < 1 || dim > kMaxDim)
    throw domain_error("velocity grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw domain_error("velocity grid half-width must be positive");
  if (points_per_axis < 2)
    throw domain_error("velocity grid needs at least 2 points per axis, got " +
                       std::to_string(points_per_axis));

  const std::size_t m = static_cast<std::size_t>(points_per_axis);
  node_count_ = ipow(m, dim);
  spacing_ = 2.0 * half_width / static_cast<double>(points_per_axis);
  node_weight_ = 1.0;
  for (int k = 0; k < dim; ++k) node_weight_ *= spacing_;

  // Mirror the axis coordinates so that coord[m-1-k] == -coord[k] bit-exactly.
  axis_coords_.assign(m, 0.0);
  for (std::size_t k = 0; 2 * k + 1 < m; ++k) {
    const double c = -half_width + (static_cast<double>(k) + 0.5) * spacing_;
    axis_coords_[k] = c;
    axis_coords_[m - 1 - k] = -c;
  }
  if (m % 2 == 1) axis_coords_[m / 2] = 0.0;

  coords_.resize(node_count_ * static_cast<std::size_t>(dim));
  sq_norms_.resize(node_count_);
  weights_.assign(node_count_, node_weight_);
  for (std::size_t i = 0; i < node_count_; ++i) {
    std::size_t rem = i;
    double sq = 0.0;
    for (int a = dim - 1; a >= 0; --a) {
      const double c = axis_coords_[rem % m];
      rem /= m;
      coords_[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] = c;
      sq += c * c;
    }
    sq_norms_[i] = sq;
  }
}

VecN VelocityGrid::node(std::size_t i) const {
  VecN v = zero_vec();
  for (int a = 0; a < dim_; ++a)
    v[static_cast<std::size_t>(a)] = coords_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(a)];
  return v;
}

std::size_t VelocityGrid::reflected_index(std::size_t i) const {
  const std::size_t m = static_cast<std::size_t>(points_per_axis_);
  std::size_t rem = i;
  std::size_t out = 0;
  std::size_t mult = 1;
  for (int a = 0; a < dim_; ++a) {
    out += (m - 1 - rem % m) * mult;
    rem /= m;
    mult *= m;
  }
  return out;
}

double VelocityGrid::integrate(std::span<const double> values) const {
  if (values.size() != node_count_)
    throw domain_error("integrate: values length " + std::to_string(values.size()) +
                       " does not match node count " + std::to_string(node_count_));
  for (std::size_t i = 0; i < node_count_; ++i)
    if (!std::isfinite(values[i]))
      throw domain_error("integrate: non-finite value at node " + std::to_string(i));
  return integrate_terms([&](std::size_t i) { return values[i]; });
}

double VelocityGrid::interpolate(std::span<const double> values, const double* point) const {
  const std::size_t m = static_cast<std::size_t>(points_per_axis_);
  // Fractional lattice coordinate; node k sits at lattice position k.
  int base[kMaxDim];
  double frac[kMaxDim];
  for (int a = 0; a < dim_; ++a) {
    const double s = (point[a] + half_width_) / spacing_ - 0.5;
    const double fl = std::floor(s);
    base[a] = static_cast<int>(fl);
    frac[a] = s - fl;
    if (base[a] < -1 || base[a] > points_per_axis_ - 1) return 0.0;
  }
  const int corners = 1 << dim_;
  double acc = 0.0;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::size_t idx = 0;
    bool inside = true;
    for (int a = 0; a < dim_; ++a) {
      const int bit = (c >> a) & 1;
      const int k = base[a] + bit;
      w *= bit ? frac[a] : 1.0 - frac[a];
      if (k < 0 || k >= points_per_axis_) {
        inside = false;  // outside the box reads as zero
        break;
      }
      idx = idx * m + static_cast<std::size_t>(k);
    }
    if (inside) acc += w * values[idx];
  }
  return acc;
}

SpatialDomain::SpatialDomain(int spatial_dim, std::vector<double> cell_volumes)
    : spatial_dim_(spatial_dim), cell_volumes_(std::move(cell_volumes)) {
  if (spatial_dim < 1) throw domain_error("spatial dimension must be >= 1");
  if (cell_volumes_.empty()) throw domain_error("spatial domain needs at least one cell");
  total_volume_ = 0.0;
  for (double v : cell_volumes_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw domain_error("cell volumes must be positive");
    total_volume_ += v;
  }
}

SpatialDomain SpatialDomain::homogeneous(double total_volume) {
  return SpatialDomain(1, {total_volume});
}

SpatialDomain SpatialDomain::uniform(int spatial_dim, std::size_t cells, double total_volume) {
  if (cells == 0) throw domain_error("spatial domain needs at least one cell");
  if (!(total_volume > 0.0)) throw domain_error("total volume must be positive");
  return SpatialDomain(spatial_dim,
                       std::vector<double>(cells, total_volume / static_cast<double>(cells)));
}

SphereRule::SphereRule(int dim, int count) : dim_(dim) {
  if (dim != 2 && dim != 3)
    throw domain_error("sphere rule requires dimension 2 or 3, got " + std::to_string(dim));
  if (count < 4) throw domain_error("sphere rule needs at least 4 directions");

  directions_.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    weight_ = 2.0 * std::numbers::pi / static_cast<double>(count);
    for (int j = 0; j < count; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
      directions_.push_back(VecN{std::cos(phi), std::sin(phi), 0.0});
    }
  } else {
    weight_ = 4.0 * std::numbers::pi / static_cast<double>(count);
    // Fibonacci spiral: z at midpoint offsets (mean z is exactly zero),
    // azimuth advancing by the golden angle.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int j = 0; j < count; ++j) {
      const double z = 1.0 - (2.0 * static_cast<double>(j) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / golden;
      directions_.push_back(VecN{r * std::cos(phi), r * std::sin(phi), z});
    }
  }
}

}  // namespace maxdist
