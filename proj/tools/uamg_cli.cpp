// uamg: command-line driver for the aggregation multigrid solver.
//
//   uamg solve   --problem grid2d --n 256 --cycle namli --report out.json
//   uamg table   --problems grid2d --sizes 64,128,256 --cycles amli,namli
//   uamg analyze --problem grid2d --n 8 --mis-power 2
//   uamg coarsen --problem grid2d --n 64 --partition-out part.txt

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uamg/error.hpp"
#include "uamg/experiment.hpp"

namespace {

struct CliState {
  uamg::RunConfig cfg;
  std::string problem = "grid2d";
  std::string format = "mtx";
  std::string cycle = "namli";
  std::string report;
  std::string report_format = "json";
};

void add_problem_options(CLI::App* app, CliState& s) {
  app->add_option("--problem", s.problem, "grid2d, grid3d or graph-file")
      ->check(CLI::IsMember({"grid2d", "grid3d", "graph-file"}));
  app->add_option("--n", s.cfg.n, "grid side length");
  app->add_option("--path", s.cfg.path, "graph file for --problem graph-file");
  app->add_option("--format", s.format, "graph file format")
      ->check(CLI::IsMember({"mtx", "edges"}));
  app->add_option("--mis-power", s.cfg.mis_power, "distance k of the independent set");
  app->add_option("--seed", s.cfg.seed, "seed for the vertex order and the right-hand side");
  app->add_option("--degree", s.cfg.degree, "smoother degree m (0: smallest meeting --rho)");
  app->add_option("--kappa", s.cfg.kappa, "lambda1 / lambda0 of the smoother interval");
  app->add_option("--rho", s.cfg.rho, "target smoother error when --degree is 0");
}

void add_solver_options(CLI::App* app, CliState& s) {
  app->add_option("--inner", s.cfg.inner, "coarse solves per level (2: W-cycle)");
  app->add_option("--restart", s.cfg.restart, "flexible CG restart length");
  app->add_option("--tol", s.cfg.tol, "relative A-norm error target");
  app->add_option("--max-iter", s.cfg.max_iter, "outer iteration limit");
  app->add_option("--coarsest-size", s.cfg.coarsest_size, "stop coarsening below this size");
}

void add_report_options(CLI::App* app, CliState& s) {
  app->add_option("--report", s.report, "write the report to this file");
  app->add_option("--report-format", s.report_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

void finalize(CliState& s) {
  s.cfg.problem = uamg::parse_problem_kind(s.problem);
  s.cfg.format =
      s.format == "edges" ? uamg::GraphFormat::edge_list : uamg::GraphFormat::matrix_market;
  s.cfg.cycle = uamg::parse_cycle_kind(s.cycle);
  s.cfg.report_format =
      s.report_format == "csv" ? uamg::ReportFormat::csv : uamg::ReportFormat::json;
  if (!s.report.empty()) s.cfg.report_path = s.report;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw uamg::InvalidInput("cannot write " + path);
  out << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aggregation multigrid with polynomial smoothing for graph Laplacians"};
  app.require_subcommand(1);
  CliState s;

  auto* solve = app.add_subcommand("solve", "solve a manufactured problem");
  add_problem_options(solve, s);
  add_solver_options(solve, s);
  add_report_options(solve, s);
  solve->add_option("--cycle", s.cycle, "amli or namli")->check(CLI::IsMember({"amli", "namli"}));
  std::string hierarchy_out, coeffs_out;
  solve->add_option("--hierarchy-out", hierarchy_out, "write the per-level summary (JSON)");
  solve->add_option("--coefficients-out", coeffs_out, "write smoother coefficients (CSV)");

  auto* table = app.add_subcommand("table", "iteration counts over sizes and cycles");
  add_problem_options(table, s);
  add_solver_options(table, s);
  add_report_options(table, s);
  std::vector<std::string> problems{"grid2d"};
  std::vector<std::size_t> sizes{64, 128};
  std::vector<std::string> cycles{"amli", "namli"};
  table->add_option("--problems", problems, "problem kinds")->delimiter(',');
  table->add_option("--sizes", sizes, "grid sides")->delimiter(',');
  table->add_option("--cycles", cycles, "cycle kinds")->delimiter(',');

  auto* analyze = app.add_subcommand("analyze", "two-level constants of the first coarsening");
  add_problem_options(analyze, s);
  add_report_options(analyze, s);

  auto* coarsen = app.add_subcommand("coarsen", "aggregate once and report partition metrics");
  add_problem_options(coarsen, s);
  add_report_options(coarsen, s);
  std::string partition_out, coarse_out;
  coarsen->add_option("--partition-out", partition_out, "aggregate id per vertex");
  coarsen->add_option("--coarse-out", coarse_out, "coarse graph as an edge list");

  CLI11_PARSE(app, argc, argv);

  try {
    finalize(s);
    if (*solve) {
      const auto r = uamg::run_solve(s.cfg);
      std::cout << uamg::to_json(r).dump(2) << '\n';
      if (!hierarchy_out.empty() || !coeffs_out.empty()) {
        const auto h = uamg::Hierarchy::setup(uamg::build_problem(s.cfg), s.cfg.cycle_config());
        if (!hierarchy_out.empty())
          write_text(hierarchy_out, uamg::hierarchy_summary(h).dump(2) + "\n");
        if (!coeffs_out.empty()) write_text(coeffs_out, uamg::smoother_coefficients_csv(h));
      }
      return r.report.converged ? 0 : 1;
    }
    if (*table) {
      std::vector<uamg::ProblemKind> kinds;
      for (const auto& p : problems) kinds.push_back(uamg::parse_problem_kind(p));
      std::vector<uamg::CycleKind> cyc;
      for (const auto& c : cycles) cyc.push_back(uamg::parse_cycle_kind(c));
      const auto rows = uamg::run_table(kinds, sizes, cyc, s.cfg);
      const auto csv = uamg::table_csv(rows);
      std::cout << csv;
      for (const auto& w : uamg::scalability_warnings(rows)) std::cerr << "warning: " << w << '\n';
      if (!s.report.empty())
        write_text(s.report, s.cfg.report_format == uamg::ReportFormat::csv
                                 ? csv
                                 : uamg::table_json(rows).dump(2) + "\n");
      bool all_ok = true;
      for (const auto& r : rows) all_ok = all_ok && r.error.empty() && r.converged;
      return all_ok ? 0 : 1;
    }
    if (*analyze) {
      const auto rep = uamg::run_analysis(s.cfg);
      const auto text = uamg::to_json(rep).dump(2) + "\n";
      std::cout << text;
      if (!s.report.empty()) write_text(s.report, text);
      return 0;
    }
    if (*coarsen) {
      const auto r = uamg::coarsen_only(s.cfg);
      const auto text = uamg::to_json(r).dump(2) + "\n";
      std::cout << text;
      if (!s.report.empty()) write_text(s.report, text);
      if (!partition_out.empty()) {
        std::ofstream out(partition_out);
        if (!out) throw uamg::InvalidInput("cannot write " + partition_out);
        uamg::write_partition(out, r.partition);
      }
      if (!coarse_out.empty()) {
        std::ofstream out(coarse_out);
        if (!out) throw uamg::InvalidInput("cannot write " + coarse_out);
        uamg::write_edge_list(out, r.coarse.to_graph());
      }
      return r.check.ok() ? 0 : 1;
    }
  } catch (const uamg::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
