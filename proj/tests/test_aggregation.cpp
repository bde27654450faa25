#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "uamg/aggregation.hpp"
#include "uamg/dense.hpp"
#include "uamg/error.hpp"
#include "uamg/problem.hpp"

using namespace uamg;

namespace {

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}

Graph random_connected(std::mt19937_64& rng, std::size_t n, std::size_t extra) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    const auto u = pick(rng);
    edges.insert({u, v});
  }
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  for (std::size_t k = 0; k < extra; ++k) {
    auto a = any(rng), b = any(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    edges.insert({a, b});
  }
  std::vector<Edge> e;
  for (auto [a, b] : edges) e.push_back({a, b});
  return Graph(n, e);
}

// All-pairs hop distances by Floyd-Warshall; independent of the BFS code.
std::vector<std::vector<std::size_t>> all_pairs(const Graph& g) {
  const auto n = g.num_vertices();
  const std::size_t inf = n + 1;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

std::vector<std::size_t> greedy_oracle(const Graph& g, std::size_t k) {
  const auto d = all_pairs(g);
  std::vector<std::size_t> s;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    bool free = true;
    for (auto r : s) free = free && d[v][r] > k;
    if (free) s.push_back(v);
  }
  return s;
}

void check_mis(const Graph& g, const std::vector<std::size_t>& s, std::size_t k) {
  const auto d = all_pairs(g);
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) CHECK(d[s[a]][s[b]] > k);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    bool covered = false;
    for (auto r : s) covered = covered || d[v][r] <= k;
    CHECK(covered);
  }
}

Partition random_partition(std::mt19937_64& rng, const Graph& g, std::size_t k) {
  const auto adj = Adjacency::from_graph(g);
  const auto roots = mis_distance_k(adj, k, rng());
  return build_aggregates(adj, roots, k);
}

Eigen::MatrixXd dense_p(const Partition& p) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p.num_vertices()),
                                            static_cast<Eigen::Index>(p.num_aggregates()));
  for (std::size_t i = 0; i < p.num_vertices(); ++i)
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p.aggregate_of(i))) = 1.0;
  return m;
}

} // namespace

TEST_CASE("distance-k MIS examples") {
  const auto adj5 = Adjacency::from_graph(path(5));
  CHECK(mis_distance_k(adj5, 2, std::nullopt) == std::vector<std::size_t>{0, 3});

  const auto single = Adjacency::from_graph(Graph(1, {}));
  CHECK(mis_distance_k(single, 3, std::nullopt) == std::vector<std::size_t>{0});
  CHECK(mis_distance_k(single, 3, 9) == std::vector<std::size_t>{0});

  const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    CHECK(mis_distance_k(Adjacency::from_graph(k4), 1, seed).size() == 1);
}

TEST_CASE("natural-order MIS matches the greedy oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_connected(rng, 60, 30);
    for (std::size_t k : {1u, 2u, 4u})
      CHECK(mis_distance_k(Adjacency::from_graph(g), k, std::nullopt) == greedy_oracle(g, k));
  }
}

TEST_CASE("seeded MIS is independent, maximal and deterministic") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = random_connected(rng, 80, 40);
    const auto adj = Adjacency::from_graph(g);
    for (std::size_t k : {1u, 2u, 3u, 4u}) {
      const auto s = mis_distance_k(adj, k, trial);
      CHECK(std::is_sorted(s.begin(), s.end()));
      check_mis(g, s, k);
      CHECK(mis_distance_k(adj, k, trial) == s);
    }
  }
  const auto adj = Adjacency::from_graph(grid2d_graph(8));
  CHECK(mis_distance_k(adj, 2, 1) != mis_distance_k(adj, 2, 2));
  CHECK_THROWS_AS(mis_distance_k(adj, 0, 0), InvalidInput);
}

TEST_CASE("aggregate growth examples") {
  const auto adj5 = Adjacency::from_graph(path(5));
  const std::vector<std::size_t> roots{0, 3};
  const auto p = build_aggregates(adj5, roots, 2);
  CHECK(p.assignment() == std::vector<std::size_t>{0, 0, 1, 1, 1});
  CHECK(p.roots() == roots);

  const auto adj2 = Adjacency::from_graph(path(2));
  const std::vector<std::size_t> r0{0};
  const auto p2 = build_aggregates(adj2, r0, 1);
  CHECK(p2.num_aggregates() == 1);
  CHECK(p2.size(0) == 2);

  // tie at equal distance goes to the smaller root: vertex 2 of path-5
  const std::vector<std::size_t> tie{0, 4};
  CHECK(build_aggregates(adj5, tie, 2).assignment() == std::vector<std::size_t>{0, 0, 0, 1, 1});

  // vertex 4 is out of reach of root 0 in one round
  const std::vector<std::size_t> far{0};
  CHECK_THROWS_AS(build_aggregates(adj5, far, 1), InvalidInput);
}

TEST_CASE("partitions of grid2d(8) with k = 4") {
  const auto g = grid2d_graph(8);
  const auto adj = Adjacency::from_graph(g);
  const auto d = all_pairs(g);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto roots = mis_distance_k(adj, 4, seed);
    const auto p = build_aggregates(adj, roots, 4);
    const auto check = validate_partition(adj, p, 4);
    CHECK(check.ok());
    CHECK(check.min_root_distance >= 5);
    for (auto s : p.sizes()) {
      CHECK(s >= 1);
      CHECK(s <= 41);
    }
    for (std::size_t a = 0; a < roots.size(); ++a)
      for (std::size_t b = a + 1; b < roots.size(); ++b) CHECK(d[roots[a]][roots[b]] >= 5);
  }
}

TEST_CASE("validator detects broken partitions") {
  const auto adj = Adjacency::from_graph(path(4));
  // {0, 2} and {1, 3}: not connected
  const Partition split({0, 1, 0, 1}, {0, 1});
  CHECK_FALSE(validate_partition(adj, split, 1).connected);
  // roots 0 and 1 are adjacent
  const Partition close({0, 1, 1, 1}, {0, 1});
  const auto c = validate_partition(adj, close, 1);
  CHECK(c.connected);
  CHECK_FALSE(c.roots_separated);
  CHECK(c.min_root_distance == 1);
}

TEST_CASE("partition construction") {
  CHECK_THROWS_AS(Partition({0, 2}, {0, 1}), InvalidInput);
  CHECK_THROWS_AS(Partition({0, 0}, {0, 1}), InvalidInput);
  CHECK_THROWS_AS(Partition({0, 1}, {1, 0}), InvalidInput);
  const auto p = Partition::from_assignment({1, 0, 1, 0});
  CHECK(p.roots() == std::vector<std::size_t>{1, 0});
  CHECK(p.members(1).size() == 2);
  CHECK(p.members(1)[0] == 0);
  CHECK(p.members(1)[1] == 2);
  const auto s = Partition::singletons(3);
  CHECK(s.num_aggregates() == 3);

  std::ostringstream out;
  write_partition(out, p);
  std::istringstream in(out.str());
  CHECK(Partition::from_assignment(read_partition(in).assignment()) == p);
}

TEST_CASE("interpolation") {
  const Partition p({0, 0, 1, 1}, {0, 2});
  const auto pm = interpolation(p);
  CHECK(pm.nrows() == 4);
  CHECK(pm.ncols() == 2);
  CHECK(pm.at(0, 0) == 1.0);
  CHECK(pm.at(1, 0) == 1.0);
  CHECK(pm.at(2, 1) == 1.0);
  CHECK(pm.at(3, 1) == 1.0);
  CHECK(pm.nnz() == 4);
  CHECK(interpolation(Partition::singletons(5)) == SparseMatrix::identity(5));

  std::mt19937_64 rng(8);
  const auto rp = random_partition(rng, grid2d_graph(6), 2);
  const auto prm = interpolation(rp);
  CHECK(spmv(prm, Vector(rp.num_aggregates(), 1.0)) == Vector(rp.num_vertices(), 1.0));
  const Eigen::MatrixXd pd = to_dense(prm);
  const Eigen::MatrixXd ptp = pd.transpose() * pd;
  for (std::size_t l = 0; l < rp.num_aggregates(); ++l)
    for (std::size_t m = 0; m < rp.num_aggregates(); ++m)
      CHECK(ptp(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) ==
            (l == m ? static_cast<double>(rp.size(l)) : 0.0));
}

TEST_CASE("projection onto piecewise constants") {
  const Partition p({0, 0, 1, 1}, {0, 2});
  CHECK(project_Q(p, Vector{1, 3, 5, 9}) == Vector{2, 2, 7, 7});
  CHECK(project_Q(p, Vector{4, 4, 4, 4}) == Vector{4, 4, 4, 4});

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rp = random_partition(rng, grid2d_graph(4), 1 + trial % 3);
    Vector v(16);
    for (auto& x : v) x = u(rng);
    const auto qv = project_Q(rp, v);
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) err += (v[i] - qv[i]) * (v[i] - qv[i]);
    CHECK(err + dot(qv, qv) == doctest::Approx(dot(v, v)).epsilon(1e-12));
    const auto qqv = project_Q(rp, qv);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(qqv[i] == doctest::Approx(qv[i]).epsilon(1e-15));
  }
}

TEST_CASE("Galerkin product") {
  const auto a4 = laplacian_from_graph(path(4)).a;
  const Partition p({0, 0, 1, 1}, {0, 2});
  const auto ah = galerkin(a4, p);
  CHECK(ah.at(0, 0) == 1.0);
  CHECK(ah.at(0, 1) == -1.0);
  CHECK(ah.at(1, 0) == -1.0);
  CHECK(ah.at(1, 1) == 1.0);
  CHECK(galerkin(a4, Partition::singletons(4)) == a4);
}

TEST_CASE("Galerkin product matches the dense triple product") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> size(5, 200);
  std::uniform_real_distribution<double> w(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = size(rng);
    const auto base = random_connected(rng, n, n / 2);
    std::vector<double> weights(base.num_edges());
    for (auto& x : weights) x = w(rng);
    std::vector<BoundaryTerm> bnd;
    if (trial % 3 == 0) bnd.push_back({0, 1.5});
    const Graph g(n, base.edges(), weights, bnd);
    const auto prob = laplacian_from_graph(g);
    const auto p = random_partition(rng, g, 1 + trial % 4);
    const auto ah = galerkin(prob.a, p);
    const Eigen::MatrixXd pd = dense_p(p);
    const Eigen::MatrixXd ref = pd.transpose() * to_dense(prob.a) * pd;
    const Eigen::MatrixXd got = to_dense(ah);
    CHECK((got - ref).cwiseAbs().maxCoeff() <= 1e-12 * ref.cwiseAbs().maxCoeff());
    CHECK(ah.nnz() <= prob.a.nnz());
    CHECK(ah.is_symmetric());
    if (prob.kernel) {
      const auto rs = spmv(ah, Vector(ah.nrows(), 1.0));
      for (double v : rs) CHECK(std::abs(v) <= 1e-12 * inf_norm(prob.a));
    }
    // coarse graph = off-diagonal pattern of A_H
    const auto cg = coarse_graph(Adjacency::from_graph(g), p);
    std::size_t off = 0;
    for (std::size_t i = 0; i < ah.nrows(); ++i) {
      std::vector<std::size_t> expect;
      for (auto c : ah.row_cols(i))
        if (c != i) expect.push_back(c);
      off += expect.size();
      const auto nb = cg.neighbors(i);
      CHECK(std::vector<std::size_t>(nb.begin(), nb.end()) == expect);
    }
    CHECK(cg.num_edges() * 2 == off);
  }
}

TEST_CASE("coarse graph examples") {
  const auto adj = Adjacency::from_graph(path(4));
  const auto cg = coarse_graph(adj, Partition({0, 0, 1, 1}, {0, 2}));
  CHECK(cg.num_vertices() == 2);
  CHECK(cg.num_edges() == 1);
  const auto one = coarse_graph(adj, Partition({0, 0, 0, 0}, {0}));
  CHECK(one.num_vertices() == 1);
  CHECK(one.num_edges() == 0);
}

TEST_CASE("coarsening factor on structured grids with k = 4") {
  for (auto [g, label] : {std::pair{grid2d_graph(64), "grid2d(64)"},
                          std::pair{grid2d_graph(128), "grid2d(128)"},
                          std::pair{grid3d_graph(16), "grid3d(16)"},
                          std::pair{grid3d_graph(24), "grid3d(24)"}}) {
    INFO(label);
    const auto adj = Adjacency::from_graph(g);
    const auto roots = mis_distance_k(adj, 4, 0);
    const auto p = build_aggregates(adj, roots, 4);
    const double factor =
        static_cast<double>(p.num_vertices()) / static_cast<double>(p.num_aggregates());
    CHECK(factor >= 15.0);
    CHECK(factor <= 60.0);
    CHECK(validate_partition(adj, p, 4).ok());
  }
}

TEST_CASE("aggregate diameters") {
  const auto adj = Adjacency::from_graph(path(5));
  const auto d = aggregate_diameters(adj, Partition({0, 0, 1, 1, 1}, {0, 3}));
  CHECK(d == std::vector<std::size_t>{1, 2});
}
