#include "uamg/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "uamg/error.hpp"
#include "uamg/matrix_market.hpp"

namespace uamg {

ProblemInstance laplacian_from_graph(const Graph& g, std::string label) {
  if (!is_connected(g)) throw InvalidInput("graph is not connected");
  const auto n = g.num_vertices();
  std::vector<Triplet> triplets;
  triplets.reserve(4 * g.num_edges() + n + g.boundary().size());
  for (std::size_t i = 0; i < n; ++i) triplets.push_back({i, i, 0.0});
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edges()[e];
    const double w = g.weight(e);
    triplets.push_back({u, u, w});
    triplets.push_back({v, v, w});
    triplets.push_back({u, v, -w});
    triplets.push_back({v, u, -w});
  }
  for (const auto& b : g.boundary()) triplets.push_back({b.vertex, b.vertex, b.value});

  ProblemInstance p{assemble(n, n, triplets), std::nullopt, std::move(label)};
  if (g.boundary().empty()) p.kernel = Vector(n, 1.0);
  return p;
}

Graph grid2d_graph(std::size_t n) {
  if (n < 2) throw InvalidInput("grid2d needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(2 * n * (n - 1));
  const auto id = [n](std::size_t i, std::size_t j) { return i * n + j; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j + 1 < n) edges.push_back({id(i, j), id(i, j + 1)});
      if (i + 1 < n) edges.push_back({id(i, j), id(i + 1, j)});
    }
  return Graph(n * n, std::move(edges));
}

Graph grid3d_graph(std::size_t n) {
  if (n < 2) throw InvalidInput("grid3d needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(3 * n * n * (n - 1));
  const auto id = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k + 1 < n) edges.push_back({id(i, j, k), id(i, j, k + 1)});
        if (j + 1 < n) edges.push_back({id(i, j, k), id(i, j + 1, k)});
        if (i + 1 < n) edges.push_back({id(i, j, k), id(i + 1, j, k)});
      }
  return Graph(n * n * n, std::move(edges));
}

ProblemInstance grid2d(std::size_t n) {
  return laplacian_from_graph(grid2d_graph(n), "grid2d-" + std::to_string(n));
}

ProblemInstance grid3d(std::size_t n) {
  return laplacian_from_graph(grid3d_graph(n), "grid3d-" + std::to_string(n));
}

Graph graph_from_matrix(const SparseMatrix& a) {
  if (a.nrows() != a.ncols()) throw InvalidInput("graph matrix must be square");
  if (!a.is_symmetric()) throw InvalidInput("graph matrix must be symmetric");
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::vector<BoundaryTerm> boundary;
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    double diag = 0.0, off = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto j = cols[k];
      if (j == i) {
        diag = vals[k];
        continue;
      }
      if (vals[k] > 0.0)
        throw InvalidInput("positive off-diagonal entry at (" + std::to_string(i) + ", " +
                           std::to_string(j) + "): not an M-matrix");
      off += -vals[k];
      if (i < j) {
        edges.push_back({i, j});
        weights.push_back(-vals[k]);
      }
    }
    const double surplus = diag - off;
    const double tol = 1e-12 * std::max(std::abs(diag), off);
    if (surplus < -tol)
      throw InvalidInput("row " + std::to_string(i) + " has negative row sum");
    if (surplus > tol) boundary.push_back({i, surplus});
  }
  const bool unit = std::all_of(weights.begin(), weights.end(), [](double w) { return w == 1.0; });
  if (unit) weights.clear();
  return Graph(a.nrows(), std::move(edges), std::move(weights), std::move(boundary));
}

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::vector<double> weights;
  bool any_weight = false;
  std::size_t n = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long i = 0, j = 0;
    if (!(ls >> i)) continue;
    if (!(ls >> j) || i < 0 || j < 0)
      throw ParseError("edge list line " + std::to_string(lineno) + ": expected 'i j [w]'");
    double w = 1.0;
    if (ls >> w) any_weight = true;
    std::string rest;
    if (ls >> rest) throw ParseError("edge list line " + std::to_string(lineno) + ": trailing text");
    edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
    weights.push_back(w);
    n = std::max({n, static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(j) + 1});
  }
  if (!any_weight) weights.clear();
  return Graph(n, std::move(edges), std::move(weights));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << std::setprecision(17);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    out << g.edges()[e].u << ' ' << g.edges()[e].v;
    if (g.weighted()) out << ' ' << g.weight(e);
    out << '\n';
  }
}

ProblemInstance read_graph(const std::filesystem::path& path, GraphFormat format) {
  const auto label = path.filename().string();
  if (format == GraphFormat::matrix_market)
    return laplacian_from_graph(graph_from_matrix(read_matrix_market(path)), label);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return laplacian_from_graph(read_edge_list(in), label);
}

double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

ManufacturedSystem manufacture_rhs(const ProblemInstance& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ManufacturedSystem sys;
  sys.u_star.resize(p.a.nrows());
  for (auto& u : sys.u_star) u = 2.0 * unit_uniform(rng()) - 1.0;
  if (p.kernel) project_out(sys.u_star, *p.kernel);
  sys.f = spmv(p.a, sys.u_star);
  return sys;
}

} // namespace uamg
