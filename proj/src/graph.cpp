#include "uamg/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "uamg/error.hpp"

namespace uamg {

Graph::Graph(std::size_t num_vertices, std::vector<Edge> edges, std::vector<double> weights,
             std::vector<BoundaryTerm> boundary)
    : num_vertices_(num_vertices), edges_(std::move(edges)), weights_(std::move(weights)),
      boundary_(std::move(boundary)) {
  if (!weights_.empty() && weights_.size() != edges_.size())
    throw InvalidInput("graph: weight count does not match edge count");
  for (auto& e : edges_) {
    if (e.u >= num_vertices_ || e.v >= num_vertices_)
      throw InvalidInput("graph: edge endpoint out of range");
    if (e.u == e.v) throw InvalidInput("graph: self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  for (double w : weights_)
    if (!(w > 0.0)) throw InvalidInput("graph: edge weights must be positive");

  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInput("graph: duplicate edge");

  std::vector<bool> seen(num_vertices_, false);
  for (const auto& b : boundary_) {
    if (b.vertex >= num_vertices_) throw InvalidInput("graph: boundary vertex out of range");
    if (!(b.value > 0.0)) throw InvalidInput("graph: boundary terms must be positive");
    if (seen[b.vertex]) throw InvalidInput("graph: duplicate boundary term");
    seen[b.vertex] = true;
  }
}

Adjacency::Adjacency(std::vector<std::size_t> offsets, std::vector<std::size_t> neighbors)
    : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)) {
  if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != neighbors_.size())
    throw InvalidInput("adjacency: inconsistent offsets");
}

Adjacency Adjacency::from_graph(const Graph& g) {
  const auto n = g.num_vertices();
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const auto& e : g.edges()) {
    ++offsets[e.u + 1];
    ++offsets[e.v + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::size_t> nbrs(offsets.back());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& e : g.edges()) {
    nbrs[fill[e.u]++] = e.v;
    nbrs[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v)
    std::sort(nbrs.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
              nbrs.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
  return Adjacency(std::move(offsets), std::move(nbrs));
}

Adjacency Adjacency::from_pattern(const SparseMatrix& a) {
  if (a.nrows() != a.ncols()) throw DimensionMismatch("adjacency needs a square matrix");
  std::vector<std::size_t> offsets(a.nrows() + 1, 0);
  std::vector<std::size_t> nbrs;
  nbrs.reserve(a.nnz());
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    for (auto j : a.row_cols(i))
      if (j != i) nbrs.push_back(j);
    offsets[i + 1] = nbrs.size();
  }
  return Adjacency(std::move(offsets), std::move(nbrs));
}

Graph Adjacency::to_graph() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  for (std::size_t v = 0; v < num_vertices(); ++v)
    for (auto w : neighbors(v))
      if (v < w) edges.push_back({v, w});
  return Graph(num_vertices(), std::move(edges));
}

std::vector<std::size_t> bfs_distances(const Adjacency& adj, std::span<const std::size_t> sources) {
  std::vector<std::size_t> dist(adj.num_vertices(), unreachable);
  std::vector<std::size_t> queue;
  queue.reserve(adj.num_vertices());
  for (auto s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    for (auto w : adj.neighbors(v)) {
      if (dist[w] == unreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool is_connected(const Adjacency& adj) {
  if (adj.num_vertices() == 0) return true;
  const std::size_t root = 0;
  const auto dist = bfs_distances(adj, std::span(&root, 1));
  return std::none_of(dist.begin(), dist.end(), [](auto d) { return d == unreachable; });
}

bool is_connected(const Graph& g) { return is_connected(Adjacency::from_graph(g)); }

} // namespace uamg
