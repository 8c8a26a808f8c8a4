// maxdist: batch front-end for distribution-field moments, Maxwellian
// distance functionals, moment-class projection, BGK relaxation and the
// discrete collision operator. One command per process; text in, text out.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "maxdist/collision.hpp"
#include "maxdist/errors.hpp"
#include "maxdist/field.hpp"
#include "maxdist/functionals.hpp"
#include "maxdist/projection.hpp"
#include "maxdist/scenario.hpp"

namespace {

using namespace maxdist;

nlohmann::ordered_json record_to_json(const Record& rec) {
  nlohmann::ordered_json j;
  for (const auto& [key, value] : rec.entries()) {
    if (std::holds_alternative<double>(value))
      j[key] = std::get<double>(value);
    else if (std::holds_alternative<long>(value))
      j[key] = std::get<long>(value);
    else if (std::holds_alternative<std::string>(value))
      j[key] = std::get<std::string>(value);
    else
      j[key] = std::get<std::vector<double>>(value);
  }
  return j;
}

void emit(const Record& rec, bool as_json, const std::string& out_path) {
  const std::string text = as_json ? record_to_json(rec).dump(2) + "\n" : rec.to_kv();
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path);
    if (!os) throw io_error("cannot write output file: " + out_path);
    os << text;
    if (!os) throw io_error("write failed for output file: " + out_path);
  }
}

void add_distance_report(Record& rec, const DistanceReport& r) {
  rec.add("F_M", r.F_M);
  rec.add("F_f", r.F_f);
  rec.add("dist", r.dist);
  rec.add("rho_M", r.rho_M);
  rec.add("rho_f", r.rho_f);
  rec.add("method", to_string(r.method));
}

int cmd_moments(const ScenarioConfig& cfg, bool as_json, const std::string& out_path) {
  auto domain = build_domain(cfg);
  std::optional<MaxwellianParams> ref;
  std::shared_ptr<const VelocityGrid> grid;
  if (cfg.has("field.file") && !cfg.has("grid.n")) {
    grid = nullptr;  // grid comes from the file
  } else {
    grid = build_grid(cfg);
  }
  if (cfg.has("reference.rho") && grid) ref = build_reference(cfg, *domain, grid->dim());
  const DistributionField f = build_field(cfg, grid, domain, ref);
  const MomentSummary ms = moments(f);
  Record rec;
  rec.add("rho_total", ms.rho_total);
  rec.add_vec("U", ms.U, f.grid().dim());
  rec.add("E_total", ms.E_total);
  rec.add("S", ms.S);
  for (std::size_t c = 0; c < ms.mean_u_per_cell.size(); ++c)
    rec.add_vec("mean_u_" + std::to_string(c), ms.mean_u_per_cell[c], f.grid().dim());
  emit(rec, as_json, out_path);
  return 0;
}

int cmd_dist(const ScenarioConfig& cfg, const std::string& method, bool as_json,
             const std::string& out_path) {
  auto domain = build_domain(cfg);
  auto grid = build_grid(cfg);
  const MaxwellianParams ref = build_reference(cfg, *domain, grid->dim());
  const DistributionField f = build_field(cfg, grid, domain, ref);
  const double rel_tol = cfg.get_number_or("dist.rel_tol_density", kDefaultDensityRelTol);
  const DistanceReport r = method == "bregman" ? distance_bregman(ref, f, rel_tol)
                                               : distance(ref, f, ref.T, rel_tol);
  Record rec;
  add_distance_report(rec, r);
  emit(rec, as_json, out_path);
  return 0;
}

int cmd_project(const ScenarioConfig& cfg, bool run_oracle, const std::string& field_out,
                bool as_json, const std::string& out_path) {
  const MomentClass cls = build_moment_class(cfg);
  const double T_ref = cfg.get_number("class.T_ref");
  const ProjectionResult pr = project(cls, T_ref);

  Record rec;
  rec.add("rho", cls.rho);
  rec.add("E1", cls.E1);
  rec.add_vec("U", cls.U, cls.dim);
  rec.add("n", cls.dim);
  rec.add("V", cls.V_omega);
  rec.add("T_ref", T_ref);
  rec.add("T1", pr.T1);
  rec.add_vec("u1", pr.minimizer.u, cls.dim);
  rec.add("dist_min", pr.dist_min);
  rec.add("mu", pr.multipliers.mu);
  rec.add("nu", pr.multipliers.nu);
  rec.add_vec("gamma", pr.multipliers.gamma, cls.dim);
  const DistanceBoundPair bounds = class_distance_bound(T_ref, pr.T1, cls.rho, cls.U, cls.dim);
  rec.add("bound_class_T", bounds.via_class_temperature);
  rec.add("bound_ref_T", bounds.via_reference_temperature);

  std::shared_ptr<const VelocityGrid> grid;
  if (run_oracle || !field_out.empty()) {
    if (cfg.has("grid.m")) {
      grid = build_grid(cfg);
    } else {
      const int m = cls.dim == 3 ? 48 : (cls.dim == 2 ? 96 : 256);
      const double L = norm(pr.minimizer.u, cls.dim) + 8.0 * std::sqrt(std::max(pr.T1, T_ref));
      grid = std::make_shared<const VelocityGrid>(cls.dim, L, m);
    }
  }
  if (run_oracle) {
    const OracleSolution sol = project_oracle(cls, T_ref, *grid);
    auto domain = std::make_shared<const SpatialDomain>(SpatialDomain::homogeneous(cls.V_omega));
    const DistributionField closed = maxwellian_eval(pr.minimizer, grid, domain);
    double gap = 0.0;
    for (std::size_t i = 0; i < sol.field.size(); ++i)
      gap = std::max(gap, std::abs(sol.field[i] - closed.values()[i]));
    rec.add("oracle_gap", gap);
    rec.add("oracle_iterations", sol.iterations);
    rec.add("oracle_residual", sol.residual);
  }
  if (!field_out.empty()) {
    auto domain = std::make_shared<const SpatialDomain>(SpatialDomain::homogeneous(cls.V_omega));
    write_field_file(field_out, maxwellian_eval(pr.minimizer, grid, domain));
    rec.add("field_file", field_out);
  }
  emit(rec, as_json, out_path);
  return 0;
}

int cmd_relax(const ScenarioConfig& cfg, bool as_json, const std::string& out_path) {
  auto domain = build_domain(cfg);
  auto grid = build_grid(cfg);
  const MaxwellianParams ref = build_reference(cfg, *domain, grid->dim());
  const DistributionField f0 = build_field(cfg, grid, domain, ref);
  const double tau = cfg.get_number("relax.tau");
  const double dt = cfg.get_number("relax.dt");
  const long steps = cfg.get_int("relax.steps");
  const RelaxationTrace tr = relax(f0, ref, tau, dt, static_cast<int>(steps));

  if (out_path.empty() && !as_json) {
    write_trace_csv(std::cout, tr);
    return 0;
  }
  if (!out_path.empty()) write_trace_csv_file(out_path, tr);
  Record rec;
  rec.add("rows", static_cast<long>(tr.rows()));
  rec.add("t_final", tr.times.back());
  rec.add("S_initial", tr.S_values.front());
  rec.add("S_final", tr.S_values.back());
  rec.add("dist_initial", tr.dist_values.front());
  rec.add("dist_final", tr.dist_values.back());
  if (!out_path.empty()) rec.add("trace_file", out_path);
  emit(rec, as_json, "");
  return 0;
}

int cmd_collide(const ScenarioConfig& cfg, bool as_json, const std::string& out_path) {
  auto domain = build_domain(cfg);
  auto grid = build_grid(cfg);
  const int k = static_cast<int>(cfg.get_int_or("collide.k", 32));
  const std::size_t max_nodes = static_cast<std::size_t>(cfg.get_int_or("collide.max_nodes", 2048));
  const SphereRule sphere(grid->dim() == 1 ? 2 : grid->dim(), k);  // dim guard hits in q_evaluate

  std::optional<MaxwellianParams> ref;
  if (cfg.has("reference.rho")) ref = build_reference(cfg, *domain, grid->dim());
  const DistributionField f = build_field(cfg, grid, domain, ref);
  const auto q = q_evaluate(f.cell_values(0), *grid, sphere, max_nodes);
  const QInvariants iv = q_invariants(q, *grid);

  Record rec;
  rec.add("q_maxnorm", iv.q_maxnorm);
  rec.add("q_l1", iv.q_l1);
  rec.add("res_mass", iv.mass);
  rec.add_vec("res_momentum", iv.momentum, grid->dim());
  rec.add("res_energy", iv.energy);
  rec.add("rel_res_mass", std::abs(iv.mass) / iv.q_l1);
  rec.add("rel_res_momentum", norm(iv.momentum, grid->dim()) / iv.q_l1);
  rec.add("rel_res_energy", std::abs(iv.energy) / iv.q_l1);

  if (cfg.has("collide.m2")) {
    if (cfg.has("field.file"))
      throw domain_error("collide refinement pair requires an analytic field spec, not a file");
    const int m2 = static_cast<int>(cfg.get_int("collide.m2"));
    const int k2 = static_cast<int>(cfg.get_int_or("collide.k2", 2 * k));
    auto fine_grid = std::make_shared<const VelocityGrid>(grid->dim(), grid->half_width(), m2);
    const SphereRule fine_sphere(grid->dim(), k2);
    const DistributionField f2 = build_field(cfg, fine_grid, domain, ref);
    const auto q2 = q_evaluate(f2.cell_values(0), *fine_grid, fine_sphere, max_nodes);
    const QInvariants iv2 = q_invariants(q2, *fine_grid);
    rec.add("q_maxnorm_refined", iv2.q_maxnorm);
    rec.add("ratio_q_maxnorm", iv.q_maxnorm / iv2.q_maxnorm);
    rec.add("ratio_res_mass",
            (std::abs(iv.mass) / iv.q_l1) / (std::abs(iv2.mass) / iv2.q_l1));
    rec.add("ratio_res_momentum", (norm(iv.momentum, grid->dim()) / iv.q_l1) /
                                      (norm(iv2.momentum, grid->dim()) / iv2.q_l1));
    rec.add("ratio_res_energy",
            (std::abs(iv.energy) / iv.q_l1) / (std::abs(iv2.energy) / iv2.q_l1));
  }
  emit(rec, as_json, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maxdist: Maxwellian distance functionals at desk scale"};
  app.require_subcommand(1);

  std::string config_path;
  bool as_json = false;
  std::string out_path;
  app.add_option("--config", config_path, "scenario config file (section.key = value lines)")
      ->required();
  app.add_flag("--json", as_json, "emit records as JSON instead of key=value lines");
  app.add_option("--out", out_path, "write the record (or trace) to a file instead of stdout");

  CLI::App* sub_moments = app.add_subcommand("moments", "field moments, entropy and means");
  CLI::App* sub_dist = app.add_subcommand("dist", "distance to the reference Maxwellian");
  std::string method = "difference";
  sub_dist->add_option("--method", method, "difference | bregman")
      ->check(CLI::IsMember({"difference", "bregman"}));
  CLI::App* sub_project =
      app.add_subcommand("project", "nearest Maxwellian of a moment class");
  bool run_oracle = false;
  std::string field_out;
  sub_project->add_flag("--oracle", run_oracle, "also run the dual-Newton oracle and report the gap");
  sub_project->add_option("--field-out", field_out, "write the minimizer as a field file");
  CLI::App* sub_relax = app.add_subcommand("relax", "BGK relaxation trace");
  CLI::App* sub_collide = app.add_subcommand("collide", "collision operator invariants");
  for (CLI::App* sub : {sub_moments, sub_dist, sub_project, sub_relax, sub_collide})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const ScenarioConfig cfg = ScenarioConfig::load(config_path);
    if (sub_moments->parsed()) return cmd_moments(cfg, as_json, out_path);
    if (sub_dist->parsed()) return cmd_dist(cfg, method, as_json, out_path);
    if (sub_project->parsed()) return cmd_project(cfg, run_oracle, field_out, as_json, out_path);
    if (sub_relax->parsed()) return cmd_relax(cfg, as_json, out_path);
    if (sub_collide->parsed()) return cmd_collide(cfg, as_json, out_path);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
