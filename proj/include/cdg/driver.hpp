/**
 * @file driver.hpp
 * @brief Experiment orchestration: single solves, epsilon sweeps with a fixed
 *        region split, super-penalty sweeps and mesh convergence studies.
 */
#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdg/assembly.hpp"
#include "cdg/linalg.hpp"
#include "cdg/mesh.hpp"
#include "cdg/postprocess.hpp"
#include "cdg/problems.hpp"
#include "cdg/space.hpp"

namespace cdg {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExampleKind { Example1, Example2, ManufacturedLinear };

inline ExampleKind parse_example(const std::string& s) {
  if (s == "example1" || s == "1") return ExampleKind::Example1;
  if (s == "example2" || s == "2") return ExampleKind::Example2;
  if (s == "linear" || s == "manufactured_linear") return ExampleKind::ManufacturedLinear;
  throw std::invalid_argument("unknown example '" + s + "'");
}

inline MethodKind parse_method(const std::string& s) {
  if (s == "cg") return MethodKind::CG;
  if (s == "dg") return MethodKind::DG;
  if (s == "cdg") return MethodKind::CDG;
  throw std::invalid_argument("unknown method '" + s + "'");
}

inline ProblemSpec make_problem(ExampleKind kind, double epsilon) {
  switch (kind) {
    case ExampleKind::Example1: return example1(epsilon);
    case ExampleKind::Example2: return example2(epsilon);
    case ExampleKind::ManufacturedLinear: return manufactured_linear(epsilon);
  }
  throw std::invalid_argument("make_problem: bad example kind");
}

/**
 * Continuous regions used by the layer experiments: one element row short of
 * the outflow sides for the boundary-layer case, and everything outside the
 * band |x| <= 1/16 for the interior-layer case.
 */
inline RegionSpec default_region(ExampleKind kind) {
  switch (kind) {
    case ExampleKind::Example1:
      return {{Rect{{0.0, 0.96875, true, false}, {0.0, 0.96875, true, false}}}};
    case ExampleKind::Example2:
      return {{Rect{{-1.0, -0.0625, true, false}, {-1.0, 1.0, true, true}},
               Rect{{0.0625, 1.0, false, true}, {-1.0, 1.0, true, true}}}};
    case ExampleKind::ManufacturedLinear:
      return {{Rect{{0.0, 0.5, true, false}, {0.0, 1.0, true, true}}}};
  }
  return {};
}

namespace detail {

inline Interval parse_interval(const std::string& s) {
  if (s.size() < 5) throw std::invalid_argument("bad interval '" + s + "'");
  const char open = s.front();
  const char close = s.back();
  if ((open != '[' && open != '(') || (close != ']' && close != ')'))
    throw std::invalid_argument("interval must look like [a,b) : '" + s + "'");
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("interval needs a comma: '" + s + "'");
  std::size_t used = 0;
  Interval iv;
  const std::string lo = s.substr(1, comma - 1);
  const std::string hi = s.substr(comma + 1, s.size() - comma - 2);
  iv.lo = std::stod(lo, &used);
  if (used != lo.size()) throw std::invalid_argument("bad number in '" + s + "'");
  iv.hi = std::stod(hi, &used);
  if (used != hi.size()) throw std::invalid_argument("bad number in '" + s + "'");
  iv.lo_closed = open == '[';
  iv.hi_closed = close == ']';
  return iv;
}

}  // namespace detail

/**
 * Region syntax: "default", "all", "none", or rectangles joined by '+',
 * each written as an x-interval times a y-interval, e.g.
 * "[-1,-0.0625)x[-1,1]+(0.0625,1]x[-1,1]".
 */
inline RegionSpec parse_region(const std::string& text, ExampleKind kind,
                               std::pair<Point2, Point2> bounds) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "default") return default_region(kind);
  if (s == "all") return RegionSpec::whole(bounds.first, bounds.second);
  if (s == "none") return RegionSpec::none();
  RegionSpec spec;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto plus = s.find('+', start);
    const std::string rect = s.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
    const auto cross = rect.find_first_of("xX", 1);
    if (cross == std::string::npos) throw std::invalid_argument("rectangle needs 'x': '" + rect + "'");
    spec.continuous_region.push_back({detail::parse_interval(rect.substr(0, cross)),
                                      detail::parse_interval(rect.substr(cross + 1))});
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return spec;
}

struct RunConfig {
  ExampleKind example{ExampleKind::Example1};
  MethodKind method{MethodKind::CDG};
  double epsilon{1e-6};
  std::size_t nx{32};
  std::size_t ny{32};
  int degree{1};
  double sigma_c{10.0};
  double sigma_d{10.0};
  int theta{-1};
  std::optional<RegionSpec> region;
  std::string out_csv;
  std::string out_vtk;
  std::vector<double> sweep_epsilons;
  std::vector<double> sweep_sigmas;
  std::vector<std::size_t> sweep_meshes;
  double solver_tolerance{1e-10};
  bool compare_with_dg{true};

  DGParameters parameters() const { return {sigma_c, sigma_d, theta, false}; }
  RegionSpec region_or_default() const { return region ? *region : default_region(example); }
};

struct SolveOutcome {
  DiscreteField field;
  SolveReport report;
  AssemblyDiagnostics diagnostics;
};

/// Mesh for `problem` with regions and inflow/outflow tags applied.
inline std::shared_ptr<const Mesh> prepare_mesh(const ProblemSpec& problem, std::size_t nx,
                                                std::size_t ny, const RegionSpec& region) {
  auto mesh = build_structured_mesh(problem.bounds(), nx, ny);
  mesh = classify_regions(std::move(mesh), region);
  mesh = classify_boundary_flow(std::move(mesh), problem.b);
  return std::make_shared<const Mesh>(std::move(mesh));
}

/// Assemble and solve one method; throws SolverError when the solve breaks down.
inline SolveOutcome solve_problem(const ProblemSpec& problem, std::shared_ptr<const Mesh> mesh,
                                  int degree, MethodKind method, const DGParameters& params,
                                  double tol = 1e-10) {
  auto dofs = std::make_shared<const DofMap>(
      apply_dirichlet_constraints(build_dof_map(*mesh, degree, method), *mesh, problem.g));
  const auto system = assemble_system(*mesh, *dofs, problem, params);
  auto result = solve(system.matrix, system.rhs, tol);
  if (result.report.status != SolveStatus::Converged)
    throw SolverError("solve breakdown for method " + std::string(to_string(method)) +
                      " (relative residual " + std::to_string(result.report.relative_residual) + ")");
  return {DiscreteField(std::move(mesh), std::move(dofs), std::move(result.x)), result.report,
          system.diagnostics};
}

struct RunResult {
  DiscreteField primary;
  std::optional<DiscreteField> reference;  // pure dG on the same mesh
  SweepRecord record;
};

namespace detail {
inline std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}
constexpr double not_available = std::numeric_limits<double>::quiet_NaN();
}  // namespace detail

/**
 * Solve the configured method. Unless the method already is dG (or
 * comparison is switched off) the plain dG solution on the same mesh is
 * solved too and the difference norms are recorded.
 */
inline RunResult run_single(const RunConfig& config) {
  const auto problem = make_problem(config.example, config.epsilon);
  const auto params = config.parameters();
  params.validate();
  const auto mesh = prepare_mesh(problem, config.nx, config.ny, config.region_or_default());

  auto primary = solve_problem(problem, mesh, config.degree, config.method, params,
                               config.solver_tolerance);
  std::optional<DiscreteField> reference;
  if (config.method == MethodKind::DG)
    reference = primary.field;
  else if (config.compare_with_dg)
    reference = solve_problem(problem, mesh, config.degree, MethodKind::DG, params,
                              config.solver_tolerance)
                    .field;

  SweepRecord rec;
  rec.epsilon = config.epsilon;
  rec.sigma_c = config.sigma_c;
  rec.sigma_d = config.sigma_d;
  rec.theta = config.theta;
  rec.mesh_size = config.nx;
  rec.method = to_string(config.method);
  rec.dofs_cdg = primary.field.dofs().n_dofs();
  rec.dofs_dg = reference ? reference->dofs().n_dofs() : 0;
  rec.l2_diff = reference ? l2_norm_diff(primary.field, *reference) : detail::not_available;
  rec.linf_diff = reference ? linf_norm_diff(primary.field, *reference) : detail::not_available;
  rec.l2_err_cdg = rec.linf_err_cdg = rec.l2_err_dg = rec.linf_err_dg = detail::not_available;
  if (problem.exact_u) {
    rec.l2_err_cdg = l2_norm_diff(primary.field, *problem.exact_u);
    rec.linf_err_cdg = linf_norm_diff(primary.field, *problem.exact_u);
    if (reference) {
      rec.l2_err_dg = l2_norm_diff(*reference, *problem.exact_u);
      rec.linf_err_dg = linf_norm_diff(*reference, *problem.exact_u);
    }
  }

  if (!config.out_vtk.empty()) {
    write_vtk(primary.field, config.out_vtk);
    if (reference && config.method != MethodKind::DG)
      write_vtk(*reference, detail::with_suffix(config.out_vtk, "_dg"));
  }
  return {std::move(primary.field), std::move(reference), rec};
}

/// One record per epsilon; a failing entry is kept with its error as status.
inline std::vector<SweepRecord> run_epsilon_sweep(const RunConfig& config) {
  if (config.sweep_epsilons.empty()) throw std::invalid_argument("run_epsilon_sweep: empty epsilon list");
  std::vector<SweepRecord> records;
  for (double eps : config.sweep_epsilons) {
    RunConfig c = config;
    c.epsilon = eps;
    c.out_vtk.clear();
    c.out_csv.clear();
    try {
      records.push_back(run_single(c).record);
    } catch (const std::exception& e) {
      SweepRecord r;
      r.epsilon = eps;
      r.sigma_c = c.sigma_c;
      r.sigma_d = c.sigma_d;
      r.theta = c.theta;
      r.mesh_size = c.nx;
      r.method = to_string(c.method);
      r.l2_diff = r.linf_diff = r.l2_err_cdg = r.linf_err_cdg = r.l2_err_dg = r.linf_err_dg =
          detail::not_available;
      r.status = std::string("error: ") + e.what();
      records.push_back(r);
    }
  }
  if (!config.out_csv.empty()) write_csv(records, config.out_csv);
  return records;
}

/**
 * Distance between the cdG solution and dG solutions whose continuous
 * skeleton (interior and boundary) is penalized with each sigma_c in turn.
 */
inline std::vector<SweepRecord> run_superpenalty_sweep(const RunConfig& config) {
  if (config.sweep_sigmas.empty()) throw std::invalid_argument("run_superpenalty_sweep: empty sigma list");
  const auto problem = make_problem(config.example, config.epsilon);
  const auto mesh = prepare_mesh(problem, config.nx, config.ny, config.region_or_default());
  const auto cdg = solve_problem(problem, mesh, config.degree, MethodKind::CDG, config.parameters(),
                                 config.solver_tolerance);

  std::vector<SweepRecord> records;
  for (double sc : config.sweep_sigmas) {
    SweepRecord r;
    r.epsilon = config.epsilon;
    r.sigma_c = sc;
    r.sigma_d = config.sigma_d;
    r.theta = config.theta;
    r.mesh_size = config.nx;
    r.method = "dg-superpenalty";
    r.dofs_cdg = cdg.field.dofs().n_dofs();
    try {
      DGParameters params{sc, config.sigma_d, config.theta, true};
      params.validate();
      const auto dg = solve_problem(problem, mesh, config.degree, MethodKind::DG, params,
                                    config.solver_tolerance);
      r.dofs_dg = dg.field.dofs().n_dofs();
      r.l2_diff = l2_norm_diff(cdg.field, dg.field);
      r.linf_diff = linf_norm_diff(cdg.field, dg.field);
      r.l2_err_cdg = r.linf_err_cdg = r.l2_err_dg = r.linf_err_dg = detail::not_available;
      if (problem.exact_u) {
        r.l2_err_cdg = l2_norm_diff(cdg.field, *problem.exact_u);
        r.linf_err_cdg = linf_norm_diff(cdg.field, *problem.exact_u);
        r.l2_err_dg = l2_norm_diff(dg.field, *problem.exact_u);
        r.linf_err_dg = linf_norm_diff(dg.field, *problem.exact_u);
      }
    } catch (const std::exception& e) {
      r.l2_diff = r.linf_diff = r.l2_err_cdg = r.linf_err_cdg = r.l2_err_dg = r.linf_err_dg =
          detail::not_available;
      r.status = std::string("error: ") + e.what();
    }
    records.push_back(r);
  }
  if (!config.out_csv.empty()) write_csv(records, config.out_csv);
  return records;
}

/// Error against the exact solution on each n-by-n mesh of `sweep_meshes`.
inline std::vector<SweepRecord> run_convergence_study(const RunConfig& config) {
  if (config.sweep_meshes.empty()) throw std::invalid_argument("run_convergence_study: empty mesh list");
  std::vector<SweepRecord> records;
  for (std::size_t n : config.sweep_meshes) {
    RunConfig c = config;
    c.nx = c.ny = n;
    c.compare_with_dg = false;
    c.out_vtk.clear();
    c.out_csv.clear();
    try {
      records.push_back(run_single(c).record);
    } catch (const std::exception& e) {
      SweepRecord r;
      r.epsilon = c.epsilon;
      r.mesh_size = n;
      r.method = to_string(c.method);
      r.l2_diff = r.linf_diff = r.l2_err_cdg = r.linf_err_cdg = r.l2_err_dg = r.linf_err_dg =
          detail::not_available;
      r.status = std::string("error: ") + e.what();
      records.push_back(r);
    }
  }
  if (!config.out_csv.empty()) write_csv(records, config.out_csv);
  return records;
}

/// log2-style rates between consecutive records, from l2_err_cdg and mesh_size.
inline std::vector<double> observed_orders(const std::vector<SweepRecord>& records) {
  std::vector<double> orders;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    orders.push_back(std::log(a.l2_err_cdg / b.l2_err_cdg) /
                     std::log(static_cast<double>(b.mesh_size) / static_cast<double>(a.mesh_size)));
  }
  return orders;
}

inline bool all_ok(const std::vector<SweepRecord>& records) {
  for (const auto& r : records)
    if (r.status != "ok") return false;
  return true;
}

}  // namespace cdg
