#include "maxdist/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "maxdist/errors.hpp"

namespace maxdist {

MaxwellianParams::MaxwellianParams(double rho_, VecN u_, double T_, double V_omega_, int dim_)
    : rho(rho_), u(u_), T(T_), V_omega(V_omega_), dim(dim_) {
  if (dim < 1 || dim > kMaxDim) throw domain_error("Maxwellian dimension must be 1, 2 or 3");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw domain_error("Maxwellian density must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw domain_error("Maxwellian temperature must be positive");
  if (!(V_omega > 0.0) || !std::isfinite(V_omega))
    throw domain_error("Maxwellian domain volume must be positive");
  for (int k = dim; k < kMaxDim; ++k) u[static_cast<std::size_t>(k)] = 0.0;
}

double MaxwellianParams::prefactor() const {
  return rho / (V_omega * std::pow(2.0 * std::numbers::pi * T, 0.5 * dim));
}

DistributionField::DistributionField(std::shared_ptr<const VelocityGrid> grid,
                                     std::shared_ptr<const SpatialDomain> domain,
                                     std::vector<double> values)
    : grid_(std::move(grid)), domain_(std::move(domain)), values_(std::move(values)) {
  if (!grid_ || !domain_) throw domain_error("distribution field needs a grid and a domain");
  const std::size_t expected = grid_->node_count() * domain_->cell_count();
  if (values_.size() != expected)
    throw domain_error("distribution field has " + std::to_string(values_.size()) +
                       " values, expected " + std::to_string(expected));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v))
      throw domain_error("field value at index " + std::to_string(i) + " (cell " +
                         std::to_string(i / grid_->node_count()) + ", node " +
                         std::to_string(i % grid_->node_count()) + ") is not finite");
    if (v < 0.0)
      throw domain_error("field value at index " + std::to_string(i) + " (cell " +
                         std::to_string(i / grid_->node_count()) + ", node " +
                         std::to_string(i % grid_->node_count()) +
                         ") is negative: " + std::to_string(v));
  }
}

std::span<const double> DistributionField::cell_values(std::size_t c) const {
  const std::size_t n = grid_->node_count();
  return std::span<const double>(values_).subspan(c * n, n);
}

DistributionField maxwellian_eval(const MaxwellianParams& p,
                                  std::shared_ptr<const VelocityGrid> grid,
                                  std::shared_ptr<const SpatialDomain> domain) {
  if (!grid || !domain) throw domain_error("maxwellian_eval needs a grid and a domain");
  if (p.dim != grid->dim())
    throw domain_error("Maxwellian dimension " + std::to_string(p.dim) +
                       " does not match grid dimension " + std::to_string(grid->dim()));
  const std::size_t n_nodes = grid->node_count();
  const double pref = p.prefactor();
  const double inv2T = 1.0 / (2.0 * p.T);
  std::vector<double> node_vals(n_nodes);
  const std::span<const double> coords = grid->coords();
  const int dim = grid->dim();
  for (std::size_t i = 0; i < n_nodes; ++i) {
    double d2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double d = coords[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] -
                       p.u[static_cast<std::size_t>(a)];
      d2 += d * d;
    }
    node_vals[i] = pref * std::exp(-d2 * inv2T);
  }
  std::vector<double> values;
  values.reserve(n_nodes * domain->cell_count());
  for (std::size_t c = 0; c < domain->cell_count(); ++c)
    values.insert(values.end(), node_vals.begin(), node_vals.end());
  return DistributionField(std::move(grid), std::move(domain), std::move(values));
}

std::vector<double> local_maxwellian(double rho_x, const VecN& u_x, double T_x,
                                     const VelocityGrid& grid) {
  if (rho_x < 0.0 || !std::isfinite(rho_x)) throw domain_error("local Maxwellian density must be >= 0");
  const std::size_t n_nodes = grid.node_count();
  if (rho_x == 0.0) return std::vector<double>(n_nodes, 0.0);
  if (!(T_x > 0.0) || !std::isfinite(T_x))
    throw domain_error("local Maxwellian temperature must be positive");
  const int dim = grid.dim();
  const double pref = rho_x / std::pow(2.0 * std::numbers::pi * T_x, 0.5 * dim);
  const double inv2T = 1.0 / (2.0 * T_x);
  const std::span<const double> coords = grid.coords();
  std::vector<double> vals(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    double d2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double d = coords[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] -
                       u_x[static_cast<std::size_t>(a)];
      d2 += d * d;
    }
    vals[i] = pref * std::exp(-d2 * inv2T);
  }
  return vals;
}

CellMoments cell_moments(const VelocityGrid& grid, std::span<const double> v) {
  CellMoments m;
  const int dim = grid.dim();
  const std::span<const double> coords = grid.coords();
  const std::span<const double> sq = grid.sq_norms();
  m.rho = grid.integrate_terms([&](std::size_t i) { return v[i]; });
  for (int a = 0; a < dim; ++a) {
    m.u[static_cast<std::size_t>(a)] = grid.integrate_terms([&](std::size_t i) {
      return coords[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] * v[i];
    });
  }
  m.E = 0.5 * grid.integrate_terms([&](std::size_t i) { return sq[i] * v[i]; });
  if (m.rho > 0.0) {
    for (int a = 0; a < dim; ++a) m.u[static_cast<std::size_t>(a)] /= m.rho;
    m.T = (2.0 * m.E / m.rho - norm2(m.u, dim)) / static_cast<double>(dim);
  } else {
    // Mean velocity of an empty cell is defined as zero; T stays zero.
    m.u = zero_vec();
    m.T = 0.0;
  }
  return m;
}

double entropy_node_values(const VelocityGrid& grid, std::span<const double> v) {
  return grid.integrate_terms([&](std::size_t i) {
    const double x = v[i];
    return x < kEntropyFloor ? 0.0 : -x * std::log(x);
  });
}

MomentSummary moments(const DistributionField& f) {
  const VelocityGrid& grid = f.grid();
  const SpatialDomain& dom = f.domain();
  const int dim = grid.dim();
  MomentSummary s;
  s.mean_u_per_cell.reserve(dom.cell_count());
  for (std::size_t c = 0; c < dom.cell_count(); ++c) {
    const double vol = dom.cell_volume(c);
    const CellMoments cm = cell_moments(grid, f.cell_values(c));
    s.rho_total += vol * cm.rho;
    s.E_total += vol * cm.E;
    for (int a = 0; a < dim; ++a)
      s.U[static_cast<std::size_t>(a)] += vol * cm.rho * cm.u[static_cast<std::size_t>(a)];
    s.S += vol * entropy_node_values(grid, f.cell_values(c));
    s.mean_u_per_cell.push_back(cm.u);
  }
  return s;
}

double entropy(const DistributionField& f) {
  double s = 0.0;
  for (std::size_t c = 0; c < f.domain().cell_count(); ++c)
    s += f.domain().cell_volume(c) * entropy_node_values(f.grid(), f.cell_values(c));
  return s;
}

void write_field(std::ostream& os, const DistributionField& f) {
  const VelocityGrid& g = f.grid();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", g.half_width());
  os << g.dim() << ' ' << f.domain().spatial_dim() << ' ' << g.points_per_axis() << ' ' << buf
     << ' ' << f.domain().cell_count() << '\n';
  const std::size_t n = g.node_count();
  for (std::size_t c = 0; c < f.domain().cell_count(); ++c) {
    const std::span<const double> v = f.cell_values(c);
    for (std::size_t i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", v[i]);
      os << buf << ((i + 1) % 8 == 0 || i + 1 == n ? '\n' : ' ');
    }
  }
}

DistributionField read_field(std::istream& is, double total_volume) {
  int dim = 0;
  int n_x = 0;
  int m = 0;
  double L = 0.0;
  std::size_t cells = 0;
  if (!(is >> dim >> n_x >> m >> L >> cells))
    throw io_error("field file: malformed header (expected 'n n_x m L cells')");
  if (cells == 0) throw io_error("field file: cell count must be positive");
  if (m > 4096 || cells > 1000000 ||
      (dim >= 1 && dim <= 3 && std::pow(static_cast<double>(m), dim) > 2e7))
    throw io_error("field file: header requests an implausibly large field (m=" +
                   std::to_string(m) + ", cells=" + std::to_string(cells) + ")");

  std::shared_ptr<const VelocityGrid> grid;
  try {
    grid = std::make_shared<const VelocityGrid>(dim, L, m);
  } catch (const domain_error& e) {
    throw io_error(std::string("field file: invalid grid header: ") + e.what());
  }
  const std::size_t total = grid->node_count() * cells;
  std::vector<double> values(total);
  for (std::size_t i = 0; i < total; ++i) {
    if (!(is >> values[i]))
      throw io_error("field file: expected " + std::to_string(total) + " values, got " +
                     std::to_string(i));
  }
  double extra;
  if (is >> extra) throw io_error("field file: trailing values beyond the declared count");

  const double vol = total_volume > 0.0 ? total_volume : static_cast<double>(cells);
  auto domain = std::make_shared<const SpatialDomain>(SpatialDomain::uniform(n_x, cells, vol));
  return DistributionField(std::move(grid), std::move(domain), std::move(values));
}

DistributionField read_field_file(const std::string& path, double total_volume) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open field file: " + path);
  return read_field(is, total_volume);
}

void write_field_file(const std::string& path, const DistributionField& f) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot write field file: " + path);
  write_field(os, f);
  if (!os) throw io_error("write failed for field file: " + path);
}

}  // namespace maxdist
