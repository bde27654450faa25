#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uamg/aggregation.hpp"
#include "uamg/analysis.hpp"
#include "uamg/krylov.hpp"
#include "uamg/multilevel.hpp"
#include "uamg/problem.hpp"

namespace uamg {

enum class ProblemKind { grid2d, grid3d, graph_file };
enum class ReportFormat { json, csv };

struct RunConfig {
  ProblemKind problem = ProblemKind::grid2d;
  std::size_t n = 64; // grid side
  std::filesystem::path path;
  GraphFormat format = GraphFormat::matrix_market;
  CycleKind cycle = CycleKind::namli;
  std::size_t degree = 4; // 0 picks the smallest degree meeting rho
  std::size_t mis_power = 4;
  double kappa = 10.0;
  double rho = 0.5;
  std::size_t inner = 2;
  std::size_t restart = 5;
  double tol = 1e-8;
  std::size_t max_iter = 500;
  std::size_t coarsest_size = 100;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> report_path;
  ReportFormat report_format = ReportFormat::json;

  CycleConfig cycle_config() const;
};

std::string to_string(ProblemKind k);
std::string to_string(CycleKind k);
ProblemKind parse_problem_kind(const std::string& s);
CycleKind parse_cycle_kind(const std::string& s);

Graph build_graph(const RunConfig& cfg);
ProblemInstance build_problem(const RunConfig& cfg);

// Smoother degree actually used: cfg.degree, or the smallest degree with
// E_m <= rho and a positive polynomial on the normalized interval.
std::size_t effective_degree(const RunConfig& cfg);

struct LevelSummary {
  std::size_t n = 0;
  std::size_t nnz = 0;
  double lambda1 = 0.0;
};

struct RunResult {
  std::string problem;
  std::size_t n = 0;
  std::size_t nnz = 0;
  std::vector<LevelSummary> levels;
  Complexities complexities;
  CycleKind cycle = CycleKind::namli;
  SolveReport report;
  double setup_seconds = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t hierarchy_hash = 0;
};

// Problem, manufactured right-hand side, setup, then pcg (amli) or fcg
// (namli) from a zero initial guess. Writes the report when a path is set.
RunResult run_solve(const RunConfig& cfg);

nlohmann::json to_json(const RunResult& r);
std::string to_csv(const RunResult& r);
void write_report(const RunResult& r, const std::filesystem::path& path, ReportFormat format);

// Per-level description of a hierarchy (n_j, nnz_j, lambda1_j, n_H,
// coarsening factor).
nlohmann::json hierarchy_summary(const Hierarchy& h);

// Chebyshev coefficients of every level smoother as CSV (level, k, c_k).
std::string smoother_coefficients_csv(const Hierarchy& h);

struct TableRow {
  std::string problem;
  std::size_t n = 0; // unknowns
  std::size_t side = 0;
  CycleKind cycle = CycleKind::namli;
  std::size_t iterations = 0;
  bool converged = false;
  double grid_complexity = 0.0;
  double operator_complexity = 0.0;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  std::string error; // non-empty when the cell failed
};

// One row per (problem, size, cycle), in that nesting order. A failing
// cell records its error and the run continues.
std::vector<TableRow> run_table(const std::vector<ProblemKind>& problems,
                                const std::vector<std::size_t>& sizes,
                                const std::vector<CycleKind>& cycles, const RunConfig& base);

std::string table_csv(const std::vector<TableRow>& rows);
nlohmann::json table_json(const std::vector<TableRow>& rows);

// Rows whose iteration count grows by more than `limit` over the previous
// size with the same problem and cycle.
std::vector<std::string> scalability_warnings(const std::vector<TableRow>& rows,
                                              std::size_t limit = 5);

// Two-level constants for the first aggregation step of the configured
// problem (dense; small problems only).
ConstantsReport run_analysis(const RunConfig& cfg);
nlohmann::json to_json(const ConstantsReport& r);

struct CoarsenResult {
  Partition partition;
  Adjacency coarse;
  PartitionCheck check;
  double coarsening_factor = 0.0;
  std::vector<std::size_t> size_histogram; // index = aggregate size
  std::vector<std::size_t> diameters;
};

CoarsenResult coarsen_only(const RunConfig& cfg);
nlohmann::json to_json(const CoarsenResult& r);

} // namespace uamg
