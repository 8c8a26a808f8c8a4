#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "maxdist/grid.hpp"
#include "maxdist/vec.hpp"

namespace maxdist {

/// Entropy integrand floor: values below this count as exactly zero,
/// implementing the 0*log(0) = 0 convention without producing -inf.
inline constexpr double kEntropyFloor = 1e-300;

/// Parameters (rho, u, T, V_Omega) of a global Maxwellian
///   M(zeta) = rho / (V_Omega (2 pi T)^{n/2}) * exp(-|zeta - u|^2 / (2T)).
struct MaxwellianParams {
  double rho = 1.0;
  VecN u = zero_vec();
  double T = 1.0;
  double V_omega = 1.0;
  int dim = 1;

  MaxwellianParams() = default;
  MaxwellianParams(double rho_, VecN u_, double T_, double V_omega_, int dim_);

  /// Peak-normalization prefactor rho / (V_Omega (2 pi T)^{n/2}).
  double prefactor() const;
};

/// One time slice of a phase-space density f(x-cell, zeta-node), non-negative
/// and finite everywhere. Immutable after construction; grid and domain are
/// shared so copies are cheap.
class DistributionField {
 public:
  DistributionField(std::shared_ptr<const VelocityGrid> grid,
                    std::shared_ptr<const SpatialDomain> domain,
                    std::vector<double> values);

  const VelocityGrid& grid() const { return *grid_; }
  const SpatialDomain& domain() const { return *domain_; }
  std::shared_ptr<const VelocityGrid> grid_ptr() const { return grid_; }
  std::shared_ptr<const SpatialDomain> domain_ptr() const { return domain_; }

  std::span<const double> values() const { return values_; }
  std::span<const double> cell_values(std::size_t c) const;
  double value(std::size_t cell, std::size_t node) const {
    return values_[cell * grid_->node_count() + node];
  }

 private:
  std::shared_ptr<const VelocityGrid> grid_;
  std::shared_ptr<const SpatialDomain> domain_;
  std::vector<double> values_;
};

/// Totals and per-cell means extracted from a field by quadrature.
struct MomentSummary {
  double rho_total = 0.0;
  VecN U = zero_vec();      // total moments, component k = integral of zeta_k f
  double E_total = 0.0;     // integral of |zeta|^2/2 f
  double S = 0.0;           // entropy
  std::vector<VecN> mean_u_per_cell;  // zero vector where the cell is empty
};

/// Per-cell velocity moments; the building block of the BGK stepper.
struct CellMoments {
  double rho = 0.0;
  VecN u = zero_vec();
  double E = 0.0;
  /// Kinetic temperature (2E/rho - |u|^2)/n; zero for an empty cell.
  double T = 0.0;
};

/// Evaluate the global Maxwellian on a grid; spatially constant across cells.
DistributionField maxwellian_eval(const MaxwellianParams& p,
                                  std::shared_ptr<const VelocityGrid> grid,
                                  std::shared_ptr<const SpatialDomain> domain);

/// Per-node local Maxwellian rho_x / (2 pi T_x)^{n/2} * exp(-|zeta-u_x|^2/(2 T_x)),
/// i.e. without the 1/V_Omega normalization. rho_x = 0 gives the zero array.
std::vector<double> local_maxwellian(double rho_x, const VecN& u_x, double T_x,
                                     const VelocityGrid& grid);

MomentSummary moments(const DistributionField& f);

CellMoments cell_moments(const VelocityGrid& grid, std::span<const double> cell_values);

/// Entropy S = -sum over cells of vol_c * integral f log f dzeta, with the
/// 0*log(0) = 0 convention (values below kEntropyFloor count as zero).
double entropy(const DistributionField& f);

/// Velocity-space entropy of a single cell's per-node values (no cell volume).
double entropy_node_values(const VelocityGrid& grid, std::span<const double> values);

/// Text field format: header "n n_x m L cells", then the values in
/// (cell-major, node-minor) order at 17 significant digits.
void write_field(std::ostream& os, const DistributionField& f);

/// Read a field written by write_field. Field files carry no spatial volumes;
/// the caller supplies the total volume (cells are split uniformly). A
/// negative total_volume selects the unit-volume-per-cell default.
DistributionField read_field(std::istream& is, double total_volume = -1.0);

DistributionField read_field_file(const std::string& path, double total_volume = -1.0);
void write_field_file(const std::string& path, const DistributionField& f);

}  // namespace maxdist
