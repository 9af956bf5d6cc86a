// Command-line driver for the cG / dG / cdG advection-diffusion solver.
//
// Modes:
//   single solve           (default)
//   epsilon sweep          --sweep-epsilons 1e-1,1e-2,...
//   super-penalty sweep    --sweep-sigmas 1e1,1e2,...
//   convergence study      --sweep-meshes 8,16,32
//
// Exit codes: 0 success, 1 a run or sweep entry failed, 2 invalid configuration.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdg/cdg.hpp"

namespace {

void print_records(const std::vector<cdg::SweepRecord>& records) {
  std::printf("%-10s %-10s %-6s %-8s %-8s %-13s %-13s %-13s %-13s %s\n", "epsilon", "sigma_c",
              "n", "dofs", "dofs_dg", "l2_diff", "linf_diff", "l2_err", "linf_err", "status");
  for (const auto& r : records)
    std::printf("%-10.3g %-10.3g %-6zu %-8zu %-8zu %-13.6e %-13.6e %-13.6e %-13.6e %s\n",
                r.epsilon, r.sigma_c, r.mesh_size, r.dofs_cdg, r.dofs_dg, r.l2_diff, r.linf_diff,
                r.l2_err_cdg, r.linf_err_cdg, r.status.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-discontinuous Galerkin solver for stationary advection-diffusion"};
  app.set_config("--config", "", "Read key=value options from a file (CLI flags take precedence)");

  std::string example = "example1";
  std::string method = "cdg";
  std::string region = "default";
  cdg::RunConfig cfg;

  app.add_option("--example", example, "example1 | example2 | linear")->capture_default_str();
  app.add_option("--method", method, "cg | dg | cdg")->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "Diffusion coefficient")->capture_default_str();
  app.add_option("--nx", cfg.nx, "Elements in x")->capture_default_str();
  app.add_option("--ny", cfg.ny, "Elements in y")->capture_default_str();
  app.add_option("--degree", cfg.degree, "Polynomial degree k")->capture_default_str();
  app.add_option("--sigma-c", cfg.sigma_c, "Penalty on the continuous skeleton (super-penalty runs)")
      ->capture_default_str();
  app.add_option("--sigma-d", cfg.sigma_d, "Penalty on the discontinuous skeleton")
      ->capture_default_str();
  app.add_option("--theta", cfg.theta, "Symmetrization switch -1, 0 or 1")->capture_default_str();
  app.add_option("--region", region,
                 "Continuous region: default | all | none | [a,b)x[c,d)+...")
      ->capture_default_str();
  app.add_option("--sweep-epsilons", cfg.sweep_epsilons, "Comma-separated epsilon list")
      ->delimiter(',');
  app.add_option("--sweep-sigmas", cfg.sweep_sigmas, "Comma-separated sigma_c list")->delimiter(',');
  app.add_option("--sweep-meshes", cfg.sweep_meshes, "Comma-separated n list for n-by-n meshes")
      ->delimiter(',');
  app.add_option("--tol", cfg.solver_tolerance, "Relative residual tolerance")->capture_default_str();
  app.add_option("--out-csv", cfg.out_csv, "Write sweep records as CSV");
  app.add_option("--out-vtk", cfg.out_vtk, "Write the solution as legacy VTK");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.example = cdg::parse_example(example);
    cfg.method = cdg::parse_method(method);
    const auto bounds = cdg::make_problem(cfg.example, 1.0).bounds();
    cfg.region = cdg::parse_region(region, cfg.example, bounds);
    cfg.parameters().validate();
    if (cfg.nx == 0 || cfg.ny == 0) throw std::invalid_argument("mesh counts must be positive");
    if (cfg.degree < 1 || cfg.degree > 4) throw std::invalid_argument("degree must be in [1,4]");
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const int modes = !cfg.sweep_epsilons.empty() + !cfg.sweep_sigmas.empty() +
                      !cfg.sweep_meshes.empty();
    if (modes > 1) throw std::invalid_argument("choose at most one sweep");
  } catch (const std::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  }

  try {
    std::vector<cdg::SweepRecord> records;
    if (!cfg.sweep_epsilons.empty()) {
      records = cdg::run_epsilon_sweep(cfg);
    } else if (!cfg.sweep_sigmas.empty()) {
      records = cdg::run_superpenalty_sweep(cfg);
    } else if (!cfg.sweep_meshes.empty()) {
      records = cdg::run_convergence_study(cfg);
      print_records(records);
      const auto orders = cdg::observed_orders(records);
      for (std::size_t i = 0; i < orders.size(); ++i)
        std::printf("order %zu -> %zu: %.3f\n", records[i].mesh_size, records[i + 1].mesh_size,
                    orders[i]);
      return cdg::all_ok(records) ? 0 : 1;
    } else {
      auto run = cdg::run_single(cfg);
      records.push_back(run.record);
      if (!cfg.out_csv.empty()) cdg::write_csv(records, cfg.out_csv);
    }
    print_records(records);
    return cdg::all_ok(records) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return 1;
  }
}
