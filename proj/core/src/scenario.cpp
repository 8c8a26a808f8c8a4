#include "maxdist/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "maxdist/errors.hpp"

namespace maxdist {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw io_error("config key '" + key + "': cannot parse number from '" + text + "'");
  }
}

}  // namespace

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open config file: " + path);
  return parse(is, path);
}

ScenarioConfig ScenarioConfig::parse(std::istream& is, const std::string& source_name) {
  ScenarioConfig cfg;
  cfg.source_ = source_name;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw io_error(source_name + ":" + std::to_string(lineno) +
                     ": expected 'key = value', got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw io_error(source_name + ":" + std::to_string(lineno) + ": empty key");
    cfg.entries_.emplace_back(key, value);
  }
  return cfg;
}

bool ScenarioConfig::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == key; });
}

std::string ScenarioConfig::get_string(const std::string& key) const {
  const std::string* found = nullptr;
  for (const auto& e : entries_)
    if (e.first == key) found = &e.second;
  if (!found) throw io_error("config " + source_ + ": missing required key '" + key + "'");
  return *found;
}

std::string ScenarioConfig::get_string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double ScenarioConfig::get_number(const std::string& key) const {
  return parse_number(key, get_string(key));
}

double ScenarioConfig::get_number_or(const std::string& key, double fallback) const {
  return has(key) ? get_number(key) : fallback;
}

long ScenarioConfig::get_int(const std::string& key) const {
  const double v = get_number(key);
  const long r = static_cast<long>(v);
  if (static_cast<double>(r) != v)
    throw io_error("config key '" + key + "': expected an integer, got '" + get_string(key) + "'");
  return r;
}

long ScenarioConfig::get_int_or(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool ScenarioConfig::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw io_error("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> ScenarioConfig::get_numbers(const std::string& key) const {
  const std::string text = get_string(key);
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) out.push_back(parse_number(key, trim(item)));
  if (out.empty()) throw io_error("config key '" + key + "': empty number list");
  return out;
}

std::string format_number(double v, int digits) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string format_vector(const std::vector<double>& v, int digits) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i], digits);
  }
  return out;
}

void Record::add_vec(const std::string& key, const VecN& v, int dim) {
  std::vector<double> out(v.begin(), v.begin() + dim);
  add(key, std::move(out));
}

std::string Record::to_kv() const {
  std::string out;
  for (const auto& [key, value] : entries_) {
    out += key;
    out += '=';
    if (std::holds_alternative<double>(value))
      out += format_number(std::get<double>(value));
    else if (std::holds_alternative<long>(value))
      out += std::to_string(std::get<long>(value));
    else if (std::holds_alternative<std::string>(value))
      out += std::get<std::string>(value);
    else
      out += format_vector(std::get<std::vector<double>>(value));
    out += '\n';
  }
  return out;
}

std::shared_ptr<const SpatialDomain> build_domain(const ScenarioConfig& cfg) {
  const int n_x = static_cast<int>(cfg.get_int_or("domain.n_x", 1));
  const long cells = cfg.get_int_or("domain.cells", 1);
  const double V = cfg.get_number_or("domain.V", 1.0);
  if (cells < 1) throw domain_error("domain.cells must be >= 1");
  return std::make_shared<const SpatialDomain>(
      SpatialDomain::uniform(n_x, static_cast<std::size_t>(cells), V));
}

namespace {

VecN vec_from_numbers(const std::vector<double>& v, int dim, const std::string& key) {
  if (static_cast<int>(v.size()) != dim)
    throw io_error("config key '" + key + "': expected " + std::to_string(dim) +
                   " components, got " + std::to_string(v.size()));
  VecN out = zero_vec();
  for (int a = 0; a < dim; ++a) out[static_cast<std::size_t>(a)] = v[static_cast<std::size_t>(a)];
  return out;
}

/// Largest |u| + 8 sqrt(T) over the Maxwellians mentioned in the config;
/// used as the default truncation radius.
double default_half_width(const ScenarioConfig& cfg, int dim) {
  double radius = 0.0;
  auto consider = [&](double T, const VecN& u) {
    radius = std::max(radius, norm(u, dim) + 8.0 * std::sqrt(T));
  };
  if (cfg.has("reference.T")) {
    VecN u = zero_vec();
    if (cfg.has("reference.u")) u = vec_from_numbers(cfg.get_numbers("reference.u"), dim, "reference.u");
    consider(cfg.get_number("reference.T"), u);
  }
  for (int i = 1;; ++i) {
    const std::string prefix = "field." + std::to_string(i) + ".";
    if (!cfg.has(prefix + "T")) break;
    VecN u = zero_vec();
    if (cfg.has(prefix + "u")) u = vec_from_numbers(cfg.get_numbers(prefix + "u"), dim, prefix + "u");
    consider(cfg.get_number(prefix + "T"), u);
  }
  if (radius == 0.0)
    throw io_error("config: grid.L is required when no scenario temperature is available to "
                   "derive the default truncation radius");
  return radius;
}

}  // namespace

std::shared_ptr<const VelocityGrid> build_grid(const ScenarioConfig& cfg) {
  const int n = static_cast<int>(cfg.get_int("grid.n"));
  const int m = static_cast<int>(cfg.get_int("grid.m"));
  const double L = cfg.has("grid.L") ? cfg.get_number("grid.L") : default_half_width(cfg, n);
  return std::make_shared<const VelocityGrid>(n, L, m);
}

MaxwellianParams build_reference(const ScenarioConfig& cfg, const SpatialDomain& domain, int dim) {
  const double rho = cfg.get_number("reference.rho");
  const double T = cfg.get_number("reference.T");
  VecN u = zero_vec();
  if (cfg.has("reference.u")) u = vec_from_numbers(cfg.get_numbers("reference.u"), dim, "reference.u");
  return MaxwellianParams(rho, u, T, domain.total_volume(), dim);
}

DistributionField build_field(const ScenarioConfig& cfg, std::shared_ptr<const VelocityGrid> grid,
                              std::shared_ptr<const SpatialDomain> domain,
                              const std::optional<MaxwellianParams>& reference) {
  DistributionField field = [&]() -> DistributionField {
    if (cfg.has("field.file")) {
      // The file owns the velocity grid and the cell count; the config owns
      // the spatial measure (domain.V, split uniformly).
      DistributionField from_file =
          read_field_file(cfg.get_string("field.file"), cfg.get_number_or("domain.V", 1.0));
      if (grid && (from_file.grid().dim() != grid->dim() ||
                   from_file.grid().points_per_axis() != grid->points_per_axis() ||
                   from_file.grid().half_width() != grid->half_width()))
        throw domain_error("field file grid (n=" + std::to_string(from_file.grid().dim()) +
                           ", m=" + std::to_string(from_file.grid().points_per_axis()) +
                           ") does not match the configured grid");
      if (cfg.has("domain.cells") &&
          from_file.domain().cell_count() != static_cast<std::size_t>(cfg.get_int("domain.cells")))
        throw domain_error("field file has " + std::to_string(from_file.domain().cell_count()) +
                           " cells but the config declares " + cfg.get_string("domain.cells"));
      return from_file;
    }
    if (!grid || !domain)
      throw io_error("config: a Maxwellian field spec needs grid.* and domain.* settings");
    if (!cfg.has("field.1.rho"))
      throw io_error("config: field.file or at least one Maxwellian component "
                     "(field.1.rho / field.1.T / field.1.u) is required");
    std::vector<double> acc(grid->node_count() * domain->cell_count(), 0.0);
    for (int i = 1;; ++i) {
      const std::string prefix = "field." + std::to_string(i) + ".";
      if (!cfg.has(prefix + "rho")) break;
      VecN u = zero_vec();
      if (cfg.has(prefix + "u"))
        u = vec_from_numbers(cfg.get_numbers(prefix + "u"), grid->dim(), prefix + "u");
      const MaxwellianParams p(cfg.get_number(prefix + "rho"), u, cfg.get_number(prefix + "T"),
                               domain->total_volume(), grid->dim());
      const DistributionField component = maxwellian_eval(p, grid, domain);
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += component.values()[k];
    }
    return DistributionField(grid, domain, std::move(acc));
  }();

  if (cfg.get_bool_or("field.match_density", false)) {
    if (!reference)
      throw io_error("config: field.match_density needs a reference Maxwellian (reference.*)");
    const double rho_f = moments(field).rho_total;
    if (!(rho_f > 0.0)) throw domain_error("field.match_density: field has zero total density");
    const double scale = reference->rho / rho_f;
    std::vector<double> scaled(field.values().begin(), field.values().end());
    for (double& v : scaled) v *= scale;
    return DistributionField(field.grid_ptr(), field.domain_ptr(), std::move(scaled));
  }
  return field;
}

MomentClass build_moment_class(const ScenarioConfig& cfg) {
  const int n = static_cast<int>(cfg.get_int("class.n"));
  const double rho = cfg.get_number("class.rho");
  const double E1 = cfg.get_number("class.E1");
  const double V = cfg.get_number_or("class.V", 1.0);
  VecN U = zero_vec();
  if (cfg.has("class.U")) U = vec_from_numbers(cfg.get_numbers("class.U"), n, "class.U");
  return MomentClass(rho, E1, U, V, n);
}

}  // namespace maxdist
