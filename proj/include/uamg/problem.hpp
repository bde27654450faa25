#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "uamg/graph.hpp"
#include "uamg/sparse.hpp"

namespace uamg {

// A symmetric M-matrix of the form
//   (Au, v) = sum_e w_e (u_i - u_j)(v_i - v_j) + sum_{i in S_b} d_i u_i v_i
// together with its kernel (the constant vector) when there are no
// lower-order terms.
struct ProblemInstance {
  SparseMatrix a;
  std::optional<Vector> kernel;
  std::string label;
};

enum class GraphFormat { matrix_market, edge_list };

// Throws InvalidInput when the graph is disconnected.
ProblemInstance laplacian_from_graph(const Graph& g, std::string label = "graph");

// 4-neighbour n x n grid and 6-neighbour n x n x n grid, unit weights.
Graph grid2d_graph(std::size_t n);
Graph grid3d_graph(std::size_t n);
ProblemInstance grid2d(std::size_t n);
ProblemInstance grid3d(std::size_t n);

// Interprets a symmetric matrix as a weighted graph: w_ij = -a_ij and the
// row surplus a_ii - sum_j w_ij becomes a boundary term. Positive
// off-diagonals or negative row sums are rejected.
Graph graph_from_matrix(const SparseMatrix& a);

// "i j [w]" per line, 0-based, '#' starts a comment.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

ProblemInstance read_graph(const std::filesystem::path& path, GraphFormat format);

struct ManufacturedSystem {
  Vector u_star;
  Vector f;
};

// u_star uniform in [-1, 1) from a 64-bit Mersenne twister, made
// orthogonal to the kernel; f = A u_star.
ManufacturedSystem manufacture_rhs(const ProblemInstance& p, std::uint64_t seed);

// Uniform double in [0, 1) built from the top 53 bits; stable across
// standard library implementations.
double unit_uniform(std::uint64_t bits);

} // namespace uamg
