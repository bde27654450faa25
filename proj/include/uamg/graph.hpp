#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "uamg/sparse.hpp"

namespace uamg {

struct Edge {
  std::size_t u;
  std::size_t v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct BoundaryTerm {
  std::size_t vertex;
  double value;
};

// Undirected simple graph with optional positive edge weights and
// positive lower-order (boundary) terms. Edges are normalized to u < v.
class Graph {
public:
  Graph() = default;

  // Throws InvalidInput on self-loops, duplicate edges, out-of-range
  // vertices or non-positive weights / boundary values. Connectivity is
  // checked separately (see is_connected) because aggregation also works
  // on sub-graphs.
  Graph(std::size_t num_vertices, std::vector<Edge> edges, std::vector<double> weights = {},
        std::vector<BoundaryTerm> boundary = {});

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool weighted() const noexcept { return !weights_.empty(); }
  double weight(std::size_t e) const noexcept { return weights_.empty() ? 1.0 : weights_[e]; }
  const std::vector<BoundaryTerm>& boundary() const noexcept { return boundary_; }

private:
  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
  std::vector<BoundaryTerm> boundary_;
};

// CSR neighbor lists; the combinatorial view used by coarsening.
class Adjacency {
public:
  Adjacency() = default;
  Adjacency(std::vector<std::size_t> offsets, std::vector<std::size_t> neighbors);

  static Adjacency from_graph(const Graph& g);
  // Off-diagonal sparsity pattern of a square matrix; values are ignored.
  static Adjacency from_pattern(const SparseMatrix& a);

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::span<const std::size_t> neighbors(std::size_t v) const noexcept {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }

  Graph to_graph() const;

private:
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> neighbors_;
};

inline constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

// Hop distances from a set of sources; `unreachable` where not reached.
std::vector<std::size_t> bfs_distances(const Adjacency& adj, std::span<const std::size_t> sources);

bool is_connected(const Adjacency& adj);
bool is_connected(const Graph& g);

} // namespace uamg
