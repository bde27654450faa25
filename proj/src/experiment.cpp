#include "uamg/experiment.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "uamg/error.hpp"

namespace uamg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

// JSON cannot hold infinity; singleton aggregates are reported as null.
nlohmann::json finite_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

} // namespace

CycleConfig RunConfig::cycle_config() const {
  CycleConfig c;
  c.cycle = cycle;
  c.inner_degree = inner;
  c.smoother_degree = effective_degree(*this);
  c.mis_power = mis_power;
  c.kappa = kappa;
  c.coarsest_size = coarsest_size;
  c.seed = seed;
  c.validate();
  return c;
}

std::string to_string(ProblemKind k) {
  switch (k) {
  case ProblemKind::grid2d: return "grid2d";
  case ProblemKind::grid3d: return "grid3d";
  case ProblemKind::graph_file: return "graph-file";
  }
  return "?";
}

std::string to_string(CycleKind k) { return k == CycleKind::amli ? "amli" : "namli"; }

ProblemKind parse_problem_kind(const std::string& s) {
  if (s == "grid2d") return ProblemKind::grid2d;
  if (s == "grid3d") return ProblemKind::grid3d;
  if (s == "graph-file") return ProblemKind::graph_file;
  throw InvalidInput("unknown problem '" + s + "'");
}

CycleKind parse_cycle_kind(const std::string& s) {
  if (s == "amli") return CycleKind::amli;
  if (s == "namli") return CycleKind::namli;
  throw InvalidInput("unknown cycle '" + s + "'");
}

Graph build_graph(const RunConfig& cfg) {
  switch (cfg.problem) {
  case ProblemKind::grid2d: return grid2d_graph(cfg.n);
  case ProblemKind::grid3d: return grid3d_graph(cfg.n);
  case ProblemKind::graph_file: {
    if (cfg.path.empty()) throw InvalidInput("graph-file problem needs a path");
    std::ifstream in(cfg.path);
    if (!in) throw InvalidInput("cannot open " + cfg.path.string());
    if (cfg.format == GraphFormat::edge_list) return read_edge_list(in);
    return graph_from_matrix(read_graph(cfg.path, cfg.format).a);
  }
  }
  throw InvalidInput("unknown problem kind");
}

ProblemInstance build_problem(const RunConfig& cfg) {
  switch (cfg.problem) {
  case ProblemKind::grid2d: return grid2d(cfg.n);
  case ProblemKind::grid3d: return grid3d(cfg.n);
  case ProblemKind::graph_file: return read_graph(cfg.path, cfg.format);
  }
  throw InvalidInput("unknown problem kind");
}

std::size_t effective_degree(const RunConfig& cfg) {
  if (cfg.degree > 0) return cfg.degree;
  return min_degree(cfg.rho, cfg.kappa, 1.0);
}

RunResult run_solve(const RunConfig& cfg) {
  const auto cc = cfg.cycle_config();
  const auto prob = build_problem(cfg);
  const auto sys = manufacture_rhs(prob, cfg.seed);

  const auto t0 = Clock::now();
  const auto h = Hierarchy::setup(prob, cc);
  const double setup = seconds_since(t0);

  MultilevelPreconditioner b(h);
  const Preconditioner apply = [&b](std::span<const double> r, std::span<double> z) {
    b.apply(0, r, z);
  };
  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.restart = cfg.restart;
  opts.kernel = prob.kernel;
  ANormErrorMonitor monitor(prob.a, sys.u_star);
  const Vector x0(prob.a.nrows(), 0.0);
  auto solved = cfg.cycle == CycleKind::amli ? pcg(prob.a, sys.f, apply, x0, opts, &monitor)
                                             : fcg(prob.a, sys.f, apply, x0, opts, &monitor);

  RunResult r;
  r.problem = prob.label;
  r.n = prob.a.nrows();
  r.nnz = prob.a.nnz();
  for (const auto& lvl : h.levels()) r.levels.push_back({lvl.size(), lvl.a.nnz(), lvl.lambda1});
  r.complexities = h.complexities();
  r.cycle = cfg.cycle;
  r.report = std::move(solved.report);
  r.setup_seconds = setup;
  r.seed = cfg.seed;
  r.hierarchy_hash = h.fingerprint();
  if (cfg.report_path) write_report(r, *cfg.report_path, cfg.report_format);
  return r;
}

nlohmann::json to_json(const RunResult& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : r.levels) levels.push_back({{"n", l.n}, {"nnz", l.nnz}, {"lambda1", l.lambda1}});
  const double final_err =
      r.report.rel_a_norm_error.empty() ? -1.0 : r.report.rel_a_norm_error.back();
  return {
      {"problem", r.problem},
      {"n", r.n},
      {"nnz", r.nnz},
      {"levels", levels},
      {"grid_complexity", r.complexities.grid},
      {"operator_complexity", r.complexities.op},
      {"cycle", to_string(r.cycle)},
      {"iterations", r.report.iterations},
      {"converged", r.report.converged},
      {"final_rel_a_norm_error", final_err},
      {"setup_seconds", r.setup_seconds},
      {"solve_seconds", r.report.solve_seconds},
      {"seed", r.seed},
      {"history", r.report.rel_a_norm_error},
      {"hierarchy_hash", hex64(r.hierarchy_hash)},
  };
}

std::string to_csv(const RunResult& r) {
  std::ostringstream s;
  s << std::setprecision(17);
  s << "problem,n,nnz,levels,grid_complexity,operator_complexity,cycle,iterations,converged,"
       "final_rel_a_norm_error,setup_seconds,solve_seconds,seed\n";
  const double final_err =
      r.report.rel_a_norm_error.empty() ? -1.0 : r.report.rel_a_norm_error.back();
  s << r.problem << ',' << r.n << ',' << r.nnz << ',' << r.levels.size() << ','
    << r.complexities.grid << ',' << r.complexities.op << ',' << to_string(r.cycle) << ','
    << r.report.iterations << ',' << (r.report.converged ? "true" : "false") << ',' << final_err
    << ',' << r.setup_seconds << ',' << r.report.solve_seconds << ',' << r.seed << '\n';
  return s.str();
}

void write_report(const RunResult& r, const std::filesystem::path& path, ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write report to " + path.string());
  if (format == ReportFormat::json)
    out << to_json(r).dump(2) << '\n';
  else
    out << to_csv(r);
}

nlohmann::json hierarchy_summary(const Hierarchy& h) {
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t j = 0; j < h.num_levels(); ++j) {
    const auto& lvl = h.level(j);
    nlohmann::json e{{"n", lvl.size()}, {"nnz", lvl.a.nnz()}, {"lambda1", lvl.lambda1}};
    if (lvl.partition) {
      const auto nh = lvl.partition->num_aggregates();
      e["n_H"] = nh;
      e["coarsening_factor"] = static_cast<double>(lvl.size()) / static_cast<double>(nh);
    }
    levels.push_back(std::move(e));
  }
  const auto c = h.complexities();
  return {{"levels", levels},
          {"grid_complexity", c.grid},
          {"operator_complexity", c.op},
          {"hierarchy_hash", hex64(h.fingerprint())}};
}

std::string smoother_coefficients_csv(const Hierarchy& h) {
  std::ostringstream s;
  s << std::setprecision(17) << "level,k,coefficient\n";
  for (std::size_t j = 0; j < h.num_levels(); ++j) {
    const auto& sm = h.level(j).smoother;
    if (!sm) continue;
    const auto& c = sm->cheb_coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) s << j << ',' << k << ',' << c[k] << '\n';
  }
  return s.str();
}

std::vector<TableRow> run_table(const std::vector<ProblemKind>& problems,
                                const std::vector<std::size_t>& sizes,
                                const std::vector<CycleKind>& cycles, const RunConfig& base) {
  std::vector<TableRow> rows;
  for (auto prob : problems) {
    const std::vector<std::size_t> sides =
        prob == ProblemKind::graph_file ? std::vector<std::size_t>{0} : sizes;
    for (auto side : sides) {
      for (auto cyc : cycles) {
        RunConfig cfg = base;
        cfg.problem = prob;
        cfg.n = side;
        cfg.cycle = cyc;
        cfg.report_path.reset();
        TableRow row;
        row.problem = to_string(prob);
        row.side = side;
        row.cycle = cyc;
        try {
          const auto r = run_solve(cfg);
          row.n = r.n;
          row.iterations = r.report.iterations;
          row.converged = r.report.converged;
          row.grid_complexity = r.complexities.grid;
          row.operator_complexity = r.complexities.op;
          row.setup_seconds = r.setup_seconds;
          row.solve_seconds = r.report.solve_seconds;
        } catch (const Error& e) {
          row.error = e.kind() + ": " + e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream s;
  s << std::setprecision(6);
  s << "problem,side,n,cycle,iterations,converged,grid_complexity,operator_complexity,"
       "setup_seconds,solve_seconds,error\n";
  for (const auto& r : rows) {
    s << r.problem << ',' << r.side << ',' << r.n << ',' << to_string(r.cycle) << ','
      << r.iterations << ',' << (r.converged ? "true" : "false") << ',' << r.grid_complexity
      << ',' << r.operator_complexity << ',' << r.setup_seconds << ',' << r.solve_seconds << ','
      << '"' << r.error << '"' << '\n';
  }
  return s.str();
}

nlohmann::json table_json(const std::vector<TableRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"problem", r.problem},
                   {"side", r.side},
                   {"n", r.n},
                   {"cycle", to_string(r.cycle)},
                   {"iterations", r.iterations},
                   {"converged", r.converged},
                   {"grid_complexity", r.grid_complexity},
                   {"operator_complexity", r.operator_complexity},
                   {"setup_seconds", r.setup_seconds},
                   {"solve_seconds", r.solve_seconds},
                   {"error", r.error}});
  }
  return out;
}

std::vector<std::string> scalability_warnings(const std::vector<TableRow>& rows,
                                              std::size_t limit) {
  std::vector<std::string> out;
  std::map<std::pair<std::string, CycleKind>, const TableRow*> last;
  for (const auto& r : rows) {
    if (!r.error.empty()) continue;
    const auto key = std::make_pair(r.problem, r.cycle);
    const auto it = last.find(key);
    if (it != last.end() && r.iterations > it->second->iterations + limit) {
      std::ostringstream s;
      s << r.problem << ' ' << to_string(r.cycle) << ": iterations grew from "
        << it->second->iterations << " (side " << it->second->side << ") to " << r.iterations
        << " (side " << r.side << ")";
      out.push_back(s.str());
    }
    last[key] = &r;
  }
  return out;
}

ConstantsReport run_analysis(const RunConfig& cfg) {
  const auto g = build_graph(cfg);
  if (g.num_vertices() > kDenseCap)
    throw SizeCapExceeded("analysis needs at most " + std::to_string(kDenseCap) + " unknowns");
  const auto adj = Adjacency::from_graph(g);
  const auto roots = mis_distance_k(adj, cfg.mis_power, cfg.seed);
  const auto part = build_aggregates(adj, roots, cfg.mis_power);
  return analyze_two_level(g, part, effective_degree(cfg), cfg.kappa);
}

nlohmann::json to_json(const ConstantsReport& r) {
  nlohmann::json lam = nlohmann::json::array();
  for (double x : r.lambda_local) lam.push_back(finite_or_null(x));
  return {{"lambda_local", lam},
          {"c_p", r.c_p},
          {"c_0", r.c_0},
          {"c_1", r.c_1},
          {"c_s", r.c_s},
          {"c_nz", r.c_nz},
          {"ktg_bound", r.ktg_bound},
          {"measured_kappa_tl", r.measured_kappa_tl},
          {"max_eig_ba", r.max_eig_ba},
          {"cheeger_diagnostic", r.cheeger_diagnostic}};
}

CoarsenResult coarsen_only(const RunConfig& cfg) {
  const auto g = build_graph(cfg);
  const auto adj = Adjacency::from_graph(g);
  const auto roots = mis_distance_k(adj, cfg.mis_power, cfg.seed);
  auto part = build_aggregates(adj, roots, cfg.mis_power);
  CoarsenResult r{part, coarse_graph(adj, part), validate_partition(adj, part, cfg.mis_power),
                  static_cast<double>(part.num_vertices()) /
                      static_cast<double>(part.num_aggregates()),
                  {}, aggregate_diameters(adj, part)};
  for (auto s : part.sizes()) {
    if (r.size_histogram.size() <= s) r.size_histogram.resize(s + 1, 0);
    ++r.size_histogram[s];
  }
  return r;
}

nlohmann::json to_json(const CoarsenResult& r) {
  const auto& c = r.check;
  return {{"n", r.partition.num_vertices()},
          {"n_H", r.partition.num_aggregates()},
          {"coarsening_factor", r.coarsening_factor},
          {"coarse_edges", r.coarse.num_edges()},
          {"size_histogram", r.size_histogram},
          {"diameters", r.diameters},
          {"valid", c.ok()},
          {"min_root_distance", c.min_root_distance}};
}

} // namespace uamg
