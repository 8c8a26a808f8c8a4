#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maxdist/field.hpp"
#include "maxdist/projection.hpp"

namespace maxdist {

/// Flat "section.key = value" configuration file. '#' starts a comment; blank
/// lines are ignored; later duplicates win. Values are strings until a typed
/// getter parses them.
class ScenarioConfig {
 public:
  static ScenarioConfig load(const std::string& path);
  static ScenarioConfig parse(std::istream& is, const std::string& source_name = "<config>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;
  double get_number(const std::string& key) const;
  double get_number_or(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int_or(const std::string& key, long fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  /// Comma-separated list of numbers.
  std::vector<double> get_numbers(const std::string& key) const;
  std::uint64_t seed() const { return static_cast<std::uint64_t>(get_int_or("seed", 0)); }

  const std::string& source() const { return source_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::string source_;
};

/// Ordered key -> value record for command output. Numbers print at 12
/// significant digits; vectors as comma-joined components.
class Record {
 public:
  using Value = std::variant<double, long, std::string, std::vector<double>>;

  void add(const std::string& key, double v) { entries_.emplace_back(key, Value(v)); }
  void add(const std::string& key, long v) { entries_.emplace_back(key, Value(v)); }
  void add(const std::string& key, int v) { entries_.emplace_back(key, Value(static_cast<long>(v))); }
  void add(const std::string& key, const std::string& v) { entries_.emplace_back(key, Value(v)); }
  void add(const std::string& key, const char* v) { entries_.emplace_back(key, Value(std::string(v))); }
  void add(const std::string& key, std::vector<double> v) { entries_.emplace_back(key, Value(std::move(v))); }
  void add_vec(const std::string& key, const VecN& v, int dim);

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }

  /// One "key=value" line per entry.
  std::string to_kv() const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

/// Format a double at the given number of significant digits ("%.*g");
/// negative zero prints as "0".
std::string format_number(double v, int digits = 12);
std::string format_vector(const std::vector<double>& v, int digits = 12);

/// Assembled scenario pieces shared by the CLI commands.
struct Scenario {
  std::shared_ptr<const VelocityGrid> grid;
  std::shared_ptr<const SpatialDomain> domain;
};

/// Build the spatial domain from domain.n_x / domain.cells / domain.V
/// (defaults 1 / 1 / 1.0).
std::shared_ptr<const SpatialDomain> build_domain(const ScenarioConfig& cfg);

/// Build the velocity grid from grid.n / grid.m / grid.L. When grid.L is
/// absent it defaults to 8 * sqrt(T_max) + |u|_max over the scenario's
/// temperatures and drifts (the Gaussian tail beyond 8 sigma is below 1e-14
/// relative).
std::shared_ptr<const VelocityGrid> build_grid(const ScenarioConfig& cfg);

/// reference.rho / reference.u / reference.T with the domain's volume.
MaxwellianParams build_reference(const ScenarioConfig& cfg, const SpatialDomain& domain, int dim);

/// Field described by the config: either field.file (values from disk, cell
/// volumes from the domain config) or a mixture of Maxwellian components
/// field.<i>.rho / field.<i>.u / field.<i>.T, i = 1, 2, ...
/// field.match_density = true rescales the result to the reference density.
DistributionField build_field(const ScenarioConfig& cfg, std::shared_ptr<const VelocityGrid> grid,
                              std::shared_ptr<const SpatialDomain> domain,
                              const std::optional<MaxwellianParams>& reference);

/// class.rho / class.E1 / class.U / class.n / class.V.
MomentClass build_moment_class(const ScenarioConfig& cfg);

}  // namespace maxdist
