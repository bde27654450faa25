#include "uamg/aggregation.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "uamg/error.hpp"

namespace uamg {

namespace {

constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

// Breadth-first ball of radius `radius` around `center`, optionally
// restricted to vertices for which `inside` holds. Visited vertices are
// stamped so the scratch arrays can be reused without clearing.
class BallSearch {
public:
  explicit BallSearch(std::size_t n) : stamp_(n, 0), depth_(n, 0) { queue_.reserve(64); }

  template <class Inside, class Visit>
  void run(const Adjacency& g, std::size_t center, std::size_t radius, Inside inside, Visit visit) {
    ++current_;
    queue_.clear();
    queue_.push_back(center);
    stamp_[center] = current_;
    depth_[center] = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const auto v = queue_[head];
      if (!visit(v, depth_[v])) return;
      if (depth_[v] == radius) continue;
      for (auto w : g.neighbors(v)) {
        if (stamp_[w] == current_ || !inside(w)) continue;
        stamp_[w] = current_;
        depth_[w] = depth_[v] + 1;
        queue_.push_back(w);
      }
    }
  }

private:
  std::vector<std::uint64_t> stamp_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> queue_;
  std::uint64_t current_ = 0;
};

} // namespace

Partition::Partition(std::vector<std::size_t> aggregate_of, std::vector<std::size_t> roots)
    : aggregate_of_(std::move(aggregate_of)), roots_(std::move(roots)) {
  const auto na = roots_.size();
  offsets_.assign(na + 1, 0);
  for (auto a : aggregate_of_) {
    if (a >= na) throw InvalidInput("partition: aggregate id out of range");
    ++offsets_[a + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  members_.resize(aggregate_of_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t v = 0; v < aggregate_of_.size(); ++v) members_[fill[aggregate_of_[v]]++] = v;
  for (std::size_t l = 0; l < na; ++l) {
    if (size(l) == 0) throw InvalidInput("partition: empty aggregate " + std::to_string(l));
    if (roots_[l] >= aggregate_of_.size() || aggregate_of_[roots_[l]] != l)
      throw InvalidInput("partition: root of aggregate " + std::to_string(l) + " not inside it");
  }
}

Partition Partition::from_assignment(std::vector<std::size_t> aggregate_of) {
  std::size_t na = 0;
  for (auto a : aggregate_of) na = std::max(na, a + 1);
  std::vector<std::size_t> roots(na, none);
  for (std::size_t v = 0; v < aggregate_of.size(); ++v)
    if (roots[aggregate_of[v]] == none) roots[aggregate_of[v]] = v;
  for (auto r : roots)
    if (r == none) throw InvalidInput("partition: aggregate ids are not contiguous");
  return Partition(std::move(aggregate_of), std::move(roots));
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return Partition(ids, ids);
}

std::vector<std::size_t> Partition::sizes() const {
  std::vector<std::size_t> s(num_aggregates());
  for (std::size_t l = 0; l < s.size(); ++l) s[l] = size(l);
  return s;
}

std::vector<std::size_t> mis_distance_k(const Adjacency& g, std::size_t k,
                                        std::optional<std::uint64_t> seed) {
  if (k == 0) throw InvalidInput("mis_distance_k needs k >= 1");
  const auto n = g.num_vertices();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (seed) {
    // Explicit Fisher-Yates so the order does not depend on the standard
    // library's distribution implementation.
    std::mt19937_64 rng(*seed);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  }

  std::vector<bool> blocked(n, false);
  std::vector<std::size_t> selected;
  BallSearch ball(n);
  for (auto v : order) {
    if (blocked[v]) continue;
    selected.push_back(v);
    ball.run(
        g, v, k, [](std::size_t) { return true; },
        [&](std::size_t w, std::size_t) {
          blocked[w] = true;
          return true;
        });
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

Partition build_aggregates(const Adjacency& g, std::span<const std::size_t> roots, std::size_t k) {
  const auto n = g.num_vertices();
  std::vector<std::size_t> sorted_roots(roots.begin(), roots.end());
  std::sort(sorted_roots.begin(), sorted_roots.end());
  if (std::adjacent_find(sorted_roots.begin(), sorted_roots.end()) != sorted_roots.end())
    throw InvalidInput("build_aggregates: duplicate root");

  std::vector<std::size_t> agg(n, none);
  std::vector<std::size_t> front;
  for (std::size_t l = 0; l < sorted_roots.size(); ++l) {
    if (sorted_roots[l] >= n) throw InvalidInput("build_aggregates: root out of range");
    agg[sorted_roots[l]] = l;
    front.push_back(sorted_roots[l]);
  }

  std::vector<std::size_t> proposal(n, none);
  std::vector<std::size_t> next;
  for (std::size_t round = 0; round < k && !front.empty(); ++round) {
    next.clear();
    for (auto v : front) {
      for (auto w : g.neighbors(v)) {
        if (agg[w] != none) continue;
        if (proposal[w] == none) next.push_back(w);
        proposal[w] = std::min(proposal[w], agg[v]);
      }
    }
    for (auto w : next) {
      agg[w] = proposal[w];
      proposal[w] = none;
    }
    std::swap(front, next);
  }

  for (std::size_t v = 0; v < n; ++v)
    if (agg[v] == none)
      throw InvalidInput("build_aggregates: vertex " + std::to_string(v) + " not reached within " +
                         std::to_string(k) + " rounds; root set is not maximal");
  return Partition(std::move(agg), std::move(sorted_roots));
}

SparseMatrix interpolation(const Partition& p) {
  const auto n = p.num_vertices();
  std::vector<std::size_t> offsets(n + 1);
  std::iota(offsets.begin(), offsets.end(), std::size_t{0});
  return SparseMatrix(n, p.num_aggregates(), std::move(offsets), p.assignment(),
                      std::vector<double>(n, 1.0));
}

Vector project_Q(const Partition& p, std::span<const double> v) {
  if (v.size() != p.num_vertices()) throw DimensionMismatch("project_Q: vector length");
  Vector out(v.size());
  for (std::size_t l = 0; l < p.num_aggregates(); ++l) {
    double sum = 0.0;
    for (auto i : p.members(l)) sum += v[i];
    const double mean = sum / static_cast<double>(p.size(l));
    for (auto i : p.members(l)) out[i] = mean;
  }
  return out;
}

SparseMatrix galerkin(const SparseMatrix& a, const Partition& p) {
  if (a.nrows() != p.num_vertices() || a.ncols() != p.num_vertices())
    throw DimensionMismatch("galerkin: matrix and partition sizes differ");
  const auto nc = p.num_aggregates();
  const bool symmetric = a.is_symmetric();
  std::vector<double> acc(nc, 0.0);
  std::vector<std::size_t> marker(nc, none);
  std::vector<std::size_t> touched;

  std::vector<std::size_t> offsets(nc + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(a.nnz());
  vals.reserve(a.nnz());
  for (std::size_t ci = 0; ci < nc; ++ci) {
    touched.clear();
    for (auto i : p.members(ci)) {
      const auto rc = a.row_cols(i);
      const auto rv = a.row_values(i);
      for (std::size_t k = 0; k < rc.size(); ++k) {
        const auto cj = p.aggregate_of(rc[k]);
        if (marker[cj] != ci) {
          marker[cj] = ci;
          acc[cj] = 0.0;
          touched.push_back(cj);
        }
        acc[cj] += rv[k];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto cj : touched) {
      double v = acc[cj];
      // Block sums of (I, J) and (J, I) round differently; mirror the
      // finished row so a symmetric input gives an exactly symmetric A_H.
      if (symmetric && cj < ci) {
        const auto first = cols.begin() + static_cast<std::ptrdiff_t>(offsets[cj]);
        const auto last = cols.begin() + static_cast<std::ptrdiff_t>(offsets[cj + 1]);
        const auto it = std::lower_bound(first, last, ci);
        v = (it != last && *it == ci) ? vals[static_cast<std::size_t>(it - cols.begin())] : 0.0;
      }
      if (v == 0.0) continue;
      cols.push_back(cj);
      vals.push_back(v);
    }
    offsets[ci + 1] = cols.size();
  }
  return SparseMatrix(nc, nc, std::move(offsets), std::move(cols), std::move(vals));
}

Adjacency coarse_graph(const Adjacency& g, const Partition& p) {
  if (g.num_vertices() != p.num_vertices())
    throw DimensionMismatch("coarse_graph: graph and partition sizes differ");
  const auto nc = p.num_aggregates();
  std::vector<std::size_t> marker(nc, none);
  std::vector<std::size_t> offsets(nc + 1, 0);
  std::vector<std::size_t> nbrs;
  for (std::size_t ci = 0; ci < nc; ++ci) {
    const auto start = nbrs.size();
    marker[ci] = ci;
    for (auto v : p.members(ci))
      for (auto w : g.neighbors(v)) {
        const auto cj = p.aggregate_of(w);
        if (marker[cj] != ci) {
          marker[cj] = ci;
          nbrs.push_back(cj);
        }
      }
    std::sort(nbrs.begin() + static_cast<std::ptrdiff_t>(start), nbrs.end());
    offsets[ci + 1] = nbrs.size();
  }
  return Adjacency(std::move(offsets), std::move(nbrs));
}

PartitionCheck validate_partition(const Adjacency& g, const Partition& p, std::size_t k) {
  PartitionCheck check;
  const auto n = g.num_vertices();
  check.cover = p.num_vertices() == n;
  if (!check.cover) return check;
  std::vector<std::size_t> count(p.num_aggregates(), 0);
  for (std::size_t v = 0; v < n; ++v) ++count[p.aggregate_of(v)];
  for (std::size_t l = 0; l < count.size(); ++l)
    if (count[l] == 0 || count[l] != p.size(l)) check.cover = false;

  check.roots_owned = true;
  for (std::size_t l = 0; l < p.num_aggregates(); ++l)
    if (p.aggregate_of(p.roots()[l]) != l) check.roots_owned = false;

  BallSearch ball(n);
  check.connected = true;
  for (std::size_t l = 0; l < p.num_aggregates() && check.connected; ++l) {
    std::size_t reached = 0;
    ball.run(
        g, p.members(l).front(), n, [&](std::size_t w) { return p.aggregate_of(w) == l; },
        [&](std::size_t, std::size_t) {
          ++reached;
          return true;
        });
    if (reached != p.size(l)) check.connected = false;
  }

  std::vector<bool> is_root(n, false);
  for (auto r : p.roots()) is_root[r] = true;
  std::size_t min_dist = unreachable;
  for (auto r : p.roots()) {
    ball.run(
        g, r, n, [](std::size_t) { return true; },
        [&](std::size_t w, std::size_t d) {
          if (w != r && is_root[w]) {
            min_dist = std::min(min_dist, d);
            return false;
          }
          return d < min_dist;
        });
  }
  check.min_root_distance = min_dist;
  check.roots_separated = p.roots().size() < 2 || min_dist > k;
  return check;
}

std::vector<std::size_t> aggregate_diameters(const Adjacency& g, const Partition& p) {
  std::vector<std::size_t> diam(p.num_aggregates(), 0);
  BallSearch ball(g.num_vertices());
  for (std::size_t l = 0; l < p.num_aggregates(); ++l) {
    for (auto v : p.members(l)) {
      ball.run(
          g, v, g.num_vertices(), [&](std::size_t w) { return p.aggregate_of(w) == l; },
          [&](std::size_t, std::size_t d) {
            diam[l] = std::max(diam[l], d);
            return true;
          });
    }
  }
  return diam;
}

void write_partition(std::ostream& out, const Partition& p) {
  for (auto a : p.assignment()) out << a << '\n';
}

Partition read_partition(std::istream& in) {
  std::vector<std::size_t> ids;
  long long a = 0;
  while (in >> a) {
    if (a < 0) throw ParseError("partition file: negative aggregate id");
    ids.push_back(static_cast<std::size_t>(a));
  }
  if (!in.eof()) throw ParseError("partition file: malformed line");
  return Partition::from_assignment(std::move(ids));
}

} // namespace uamg
