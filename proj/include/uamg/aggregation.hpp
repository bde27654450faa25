#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "uamg/graph.hpp"
#include "uamg/sparse.hpp"

namespace uamg {

// Disjoint cover of the vertices by aggregates. Aggregate ids are dense in
// [0, num_aggregates) and ordered by root vertex.
class Partition {
public:
  Partition() = default;

  // aggregate_of must map every vertex to an id in [0, num_aggregates)
  // and every id must be used. roots[l] must belong to aggregate l.
  Partition(std::vector<std::size_t> aggregate_of, std::vector<std::size_t> roots);

  // Roots default to the smallest vertex of every aggregate.
  static Partition from_assignment(std::vector<std::size_t> aggregate_of);
  static Partition singletons(std::size_t n);

  std::size_t num_vertices() const noexcept { return aggregate_of_.size(); }
  std::size_t num_aggregates() const noexcept { return roots_.size(); }
  std::size_t aggregate_of(std::size_t v) const noexcept { return aggregate_of_[v]; }
  const std::vector<std::size_t>& assignment() const noexcept { return aggregate_of_; }
  const std::vector<std::size_t>& roots() const noexcept { return roots_; }
  std::size_t size(std::size_t l) const noexcept { return offsets_[l + 1] - offsets_[l]; }
  std::vector<std::size_t> sizes() const;

  // Vertices of aggregate l in increasing order.
  std::span<const std::size_t> members(std::size_t l) const noexcept {
    return {members_.data() + offsets_[l], size(l)};
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.aggregate_of_ == b.aggregate_of_ && a.roots_ == b.roots_;
  }

private:
  std::vector<std::size_t> aggregate_of_;
  std::vector<std::size_t> roots_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> members_;
};

// Greedy maximal independent set in the distance-k graph: vertices are
// visited in a seeded random order (natural order when seed is empty) and
// selected when no selected vertex lies within k hops. Returned sorted.
std::vector<std::size_t> mis_distance_k(const Adjacency& g, std::size_t k,
                                        std::optional<std::uint64_t> seed);

// Grows one aggregate per root by simultaneous breadth-first rounds; a
// vertex reached by several fronts in the same round joins the aggregate
// with the smallest root. Throws InvalidInput when some vertex is not
// reached within k rounds (roots not maximal).
Partition build_aggregates(const Adjacency& g, std::span<const std::size_t> roots, std::size_t k);

// Piecewise-constant prolongation: n x n_H, one unit entry per row.
SparseMatrix interpolation(const Partition& p);

// l2 projection onto piecewise constants (aggregate averages).
Vector project_Q(const Partition& p, std::span<const double> v);

// P^T A P by summation of the entries of A over aggregate blocks.
SparseMatrix galerkin(const SparseMatrix& a, const Partition& p);

// Quotient graph: aggregates I != J adjacent iff a fine edge joins them.
Adjacency coarse_graph(const Adjacency& g, const Partition& p);

struct PartitionCheck {
  bool cover = false;           // every vertex in exactly one aggregate
  bool connected = false;       // every aggregate connected in the fine graph
  bool roots_separated = false; // pairwise root distance > k
  bool roots_owned = false;     // roots[l] lies in aggregate l
  std::size_t min_root_distance = 0;

  bool ok() const noexcept { return cover && connected && roots_separated && roots_owned; }
};

// Exhaustive verification by breadth-first search.
PartitionCheck validate_partition(const Adjacency& g, const Partition& p, std::size_t k);

// Longest shortest path inside every aggregate (hop count).
std::vector<std::size_t> aggregate_diameters(const Adjacency& g, const Partition& p);

// Line i holds the aggregate id of vertex i.
void write_partition(std::ostream& out, const Partition& p);
Partition read_partition(std::istream& in);

} // namespace uamg
