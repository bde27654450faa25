#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "uamg/dense.hpp"
#include "uamg/error.hpp"
#include "uamg/matrix_market.hpp"
#include "uamg/sparse.hpp"

using namespace uamg;

namespace {

SparseMatrix path_laplacian(std::size_t n) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    t.push_back({i, i, 1.0});
    t.push_back({i + 1, i + 1, 1.0});
    t.push_back({i, i + 1, -1.0});
    t.push_back({i + 1, i, -1.0});
  }
  return assemble(n, n, t);
}

SparseMatrix grid3x3_laplacian() {
  std::vector<Triplet> t;
  auto id = [](std::size_t i, std::size_t j) { return 3 * i + j; };
  auto edge = [&](std::size_t u, std::size_t v) {
    t.push_back({u, u, 1.0});
    t.push_back({v, v, 1.0});
    t.push_back({u, v, -1.0});
    t.push_back({v, u, -1.0});
  };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (j + 1 < 3) edge(id(i, j), id(i, j + 1));
      if (i + 1 < 3) edge(id(i, j), id(i + 1, j));
    }
  return assemble(9, 9, t);
}

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t n, bool symmetric) {
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::vector<Triplet> t;
  for (std::size_t k = 0; k < 4 * n; ++k) {
    const auto i = idx(rng), j = idx(rng);
    const double v = val(rng);
    t.push_back({i, j, v});
    if (symmetric) t.push_back({j, i, v});
  }
  return assemble(n, n, t);
}

} // namespace

TEST_CASE("spmv on the path-4 Laplacian") {
  const auto a = path_laplacian(4);
  CHECK(spmv(a, Vector{1, 1, 1, 1}) == Vector{0, 0, 0, 0});
  CHECK(spmv(a, Vector{0, 1, 2, 3}) == Vector{-1, 0, 0, 1});
  CHECK(spmv(SparseMatrix::identity(3), Vector{2, 5, -1}) == Vector{2, 5, -1});
  Vector y(3);
  CHECK_THROWS_AS(spmv(a, Vector{1, 2, 3}, y), DimensionMismatch);
}

TEST_CASE("infinity norm") {
  CHECK(inf_norm(path_laplacian(4)) == 4.0);
  CHECK(inf_norm(SparseMatrix::identity(7)) == 1.0);
  CHECK(inf_norm(grid3x3_laplacian()) == 8.0);
}

TEST_CASE("assembly sums duplicates and drops zeros") {
  const std::vector<Triplet> dup{{0, 0, 1.0}, {0, 0, 1.0}};
  const auto a = assemble(dup);
  CHECK(a.nnz() == 1);
  CHECK(a.at(0, 0) == 2.0);

  const std::vector<Triplet> p2{{0, 1, -1.0}, {1, 0, -1.0}, {0, 0, 1.0}, {1, 1, 1.0}};
  CHECK(assemble(p2) == path_laplacian(2));

  const std::vector<Triplet> z{{0, 0, 1.0}, {0, 1, 0.0}};
  const auto b = assemble(z);
  CHECK(b.nnz() == 1);
  CHECK(b.at(0, 1) == 0.0);

  const std::vector<Triplet> cancel{{1, 2, 3.0}, {1, 2, -3.0}, {0, 0, 1.0}};
  CHECK(assemble(3, 3, cancel).nnz() == 1);

  const std::vector<Triplet> out_of_range{{3, 0, 1.0}};
  CHECK_THROWS_AS(assemble(3, 3, out_of_range), InvalidInput);
}

TEST_CASE("CSR invariants after assembly") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_matrix(rng, 30, false);
    const auto off = a.row_offsets();
    CHECK(off[0] == 0);
    CHECK(off[a.nrows()] == a.nnz());
    for (std::size_t i = 0; i < a.nrows(); ++i) {
      CHECK(off[i] <= off[i + 1]);
      const auto cols = a.row_cols(i);
      for (std::size_t k = 1; k < cols.size(); ++k) CHECK(cols[k - 1] < cols[k]);
      for (double v : a.row_values(i)) CHECK(v != 0.0);
    }
  }
}

TEST_CASE("constructor rejects malformed CSR") {
  CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 1}, {0}, {1.0}), InvalidInput);
  CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 2, 2}, {1, 0}, {1.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 1, 2}, {0, 2}, {1.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(SparseMatrix(2, 2, {0, 1, 2}, {0, 1}, {1.0, 0.0}), InvalidInput);
  CHECK_NOTHROW(SparseMatrix(2, 2, {0, 1, 2}, {0, 1}, {1.0, 1.0}));
}

TEST_CASE("symmetric matrices equal their transpose") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_matrix(rng, 40, true);
    CHECK(transpose(s) == s);
    CHECK(s.is_symmetric());
  }
  const std::vector<Triplet> t{{0, 1, 1.0}};
  CHECK_FALSE(assemble(2, 2, t).is_symmetric());
}

TEST_CASE("spmv of unit vectors reproduces stored columns") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {5u, 37u, 100u}) {
    const auto a = random_matrix(rng, n, false);
    Vector e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = 1.0;
      const auto col = spmv(a, e);
      for (std::size_t i = 0; i < n; ++i) CHECK(col[i] == a.at(i, j));
      e[j] = 0.0;
    }
  }
}

TEST_CASE("vector helpers") {
  Vector x{1, 2, 3};
  const Vector y{1, 1, 1};
  CHECK(dot(x, y) == 6.0);
  CHECK(norm2(Vector{3, 4}) == 5.0);
  axpy(2.0, y, x);
  CHECK(x == Vector{3, 4, 5});
  scale(0.5, x);
  CHECK(x == Vector{1.5, 2, 2.5});
  project_out(x, y);
  CHECK(dot(x, y) == doctest::Approx(0.0));
  CHECK(diagonal(path_laplacian(3)) == Vector{1, 2, 1});
  Vector r(4);
  residual(path_laplacian(4), Vector{0, 1, 2, 3}, Vector{0, 0, 0, 0}, r);
  CHECK(r == Vector{1, 0, 0, -1});
}

TEST_CASE("dense pseudo-solve") {
  const auto x = dense_pseudo_solve(to_dense(path_laplacian(2)), Vector{1, -1}, Vector{1, 1});
  CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(-0.5).epsilon(1e-14));

  const Vector b{3, -2, 7};
  const auto xi = dense_pseudo_solve(to_dense(SparseMatrix::identity(3)), b);
  for (std::size_t i = 0; i < 3; ++i) CHECK(xi[i] == doctest::Approx(b[i]));

  const auto a3 = path_laplacian(3);
  const auto x3 = dense_pseudo_solve(to_dense(a3), Vector{1, 0, -1}, Vector(3, 1.0));
  Vector r(3);
  residual(a3, x3, Vector{1, 0, -1}, r);
  CHECK(norm2(r) < 1e-12);
  CHECK(std::abs(x3[0] + x3[1] + x3[2]) < 1e-12);

  CHECK_THROWS_AS(dense_pseudo_solve(to_dense(a3), Vector{1, 1, 1}, Vector(3, 1.0)),
                  InconsistentRhs);
  CHECK_THROWS_AS(dense_pseudo_solve(to_dense(a3), Vector{1, 0, -1}), SingularSystem);
}

TEST_CASE("dense pseudo-solve on random consistent semidefinite systems") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> w(0.1, 2.0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {10u, 57u, 200u}) {
    // random connected weighted graph: a spanning path plus chords
    std::vector<Triplet> t;
    auto edge = [&](std::size_t a, std::size_t b, double wt) {
      t.push_back({a, a, wt});
      t.push_back({b, b, wt});
      t.push_back({a, b, -wt});
      t.push_back({b, a, -wt});
    };
    for (std::size_t i = 0; i + 1 < n; ++i) edge(i, i + 1, w(rng));
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (std::size_t k = 0; k < n; ++k) {
      const auto a = idx(rng), b = idx(rng);
      if (a != b) edge(a, b, w(rng));
    }
    const auto a = assemble(n, n, t);
    Vector b(n);
    for (auto& v : b) v = u(rng);
    project_out(b, Vector(n, 1.0));
    const auto x = dense_pseudo_solve(to_dense(a), b, Vector(n, 1.0));
    Vector r(n);
    residual(a, x, b, r);
    CHECK(norm2(r) <= 1e-10 * norm2(b));
  }
}

TEST_CASE("Matrix Market round trip") {
  const auto a = path_laplacian(5);
  for (auto sym : {MatrixSymmetry::general, MatrixSymmetry::symmetric}) {
    std::stringstream s;
    write_matrix_market(s, a, sym);
    CHECK(read_matrix_market(s) == a);
  }
  std::mt19937_64 rng(2);
  const auto r = random_matrix(rng, 25, false);
  std::stringstream s;
  write_matrix_market(s, r, MatrixSymmetry::general);
  CHECK(read_matrix_market(s) == r);
  std::stringstream refused;
  CHECK_THROWS_AS(write_matrix_market(refused, r, MatrixSymmetry::symmetric), InvalidInput);
}

TEST_CASE("Matrix Market parsing") {
  std::istringstream sym("%%MatrixMarket matrix coordinate real symmetric\n"
                         "% comment\n"
                         "2 2 3\n1 1 1\n2 1 -1\n2 2 1\n");
  CHECK(read_matrix_market(sym) == path_laplacian(2));

  std::istringstream pattern("%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 2\n2 1\n");
  const auto p = read_matrix_market(pattern);
  CHECK(p.at(0, 1) == 1.0);
  CHECK(p.at(1, 0) == 1.0);

  std::istringstream bad_header("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
  CHECK_THROWS_AS(read_matrix_market(bad_header), ParseError);
  std::istringstream truncated("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n");
  CHECK_THROWS_AS(read_matrix_market(truncated), ParseError);
  std::istringstream out_of_range("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n");
  CHECK_THROWS_AS(read_matrix_market(out_of_range), ParseError);
}
