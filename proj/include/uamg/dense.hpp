#pragma once

#include <optional>
#include <span>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "uamg/sparse.hpp"

namespace uamg {

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

DenseMatrix to_dense(const SparseMatrix& a);

// Factorization handle for symmetric positive (semi-)definite dense systems.
//
// With a kernel vector k the matrix is deflated by a rank-one term
//   A + (1/n) * (|A|_inf / |k|^2) * k k^T
// which is positive definite whenever ker(A) = span{k}; solutions are then
// returned orthogonal to k. Without a kernel it is a plain Cholesky solve.
class DensePseudoSolver {
public:
  DensePseudoSolver() = default;
  explicit DensePseudoSolver(const DenseMatrix& a, std::optional<Vector> kernel = std::nullopt);

  std::size_t size() const noexcept { return n_; }
  const std::optional<Vector>& kernel() const noexcept { return kernel_; }

  // Throws InconsistentRhs when |(b, k)| > consistency_tol * |b| |k|.
  Vector solve(std::span<const double> b, double consistency_tol = 1e-8) const;
  void solve(std::span<const double> b, std::span<double> x, double consistency_tol = 1e-8) const;

private:
  std::size_t n_ = 0;
  std::optional<Vector> kernel_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

Vector dense_pseudo_solve(const DenseMatrix& a, std::span<const double> b,
                          std::optional<Vector> kernel = std::nullopt);

} // namespace uamg
