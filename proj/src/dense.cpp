#include "uamg/dense.hpp"

#include <cmath>
#include <string>

#include "uamg/error.hpp"

namespace uamg {

DenseMatrix to_dense(const SparseMatrix& a) {
  DenseMatrix d = DenseMatrix::Zero(static_cast<Eigen::Index>(a.nrows()),
                                    static_cast<Eigen::Index>(a.ncols()));
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[k])) = vals[k];
  }
  return d;
}

DensePseudoSolver::DensePseudoSolver(const DenseMatrix& a, std::optional<Vector> kernel)
    : n_(static_cast<std::size_t>(a.rows())), kernel_(std::move(kernel)) {
  if (a.rows() != a.cols()) throw DimensionMismatch("dense solve needs a square matrix");
  Eigen::MatrixXd m = a;
  if (kernel_) {
    if (kernel_->size() != n_) throw DimensionMismatch("kernel length does not match matrix");
    const Eigen::Map<const Eigen::VectorXd> k(kernel_->data(), static_cast<Eigen::Index>(n_));
    const double kk = k.squaredNorm();
    if (kk == 0.0) throw InvalidInput("kernel vector is zero");
    double a_inf = m.cwiseAbs().rowwise().sum().maxCoeff();
    if (a_inf == 0.0) a_inf = 1.0;
    m += (a_inf / (static_cast<double>(n_) * kk)) * (k * k.transpose());
  }
  llt_.compute(m);
  if (llt_.info() != Eigen::Success)
    throw SingularSystem("dense factorization failed (matrix not positive definite on the "
                         "complement of the supplied kernel)");
}

void DensePseudoSolver::solve(std::span<const double> b, std::span<double> x,
                              double consistency_tol) const {
  if (b.size() != n_ || x.size() != n_) throw DimensionMismatch("dense solve: rhs length");
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(n_));
  if (kernel_) {
    const Eigen::Map<const Eigen::VectorXd> k(kernel_->data(), static_cast<Eigen::Index>(n_));
    const double bk = rhs.dot(k);
    const double bound = consistency_tol * rhs.norm() * k.norm();
    if (std::abs(bk) > bound)
      throw InconsistentRhs("right-hand side has component " + std::to_string(bk) +
                            " along the kernel");
    rhs -= (bk / k.squaredNorm()) * k;
  }
  Eigen::VectorXd sol = llt_.solve(rhs);
  if (kernel_) {
    const Eigen::Map<const Eigen::VectorXd> k(kernel_->data(), static_cast<Eigen::Index>(n_));
    sol -= (sol.dot(k) / k.squaredNorm()) * k;
  }
  for (std::size_t i = 0; i < n_; ++i) x[i] = sol(static_cast<Eigen::Index>(i));
}

Vector DensePseudoSolver::solve(std::span<const double> b, double consistency_tol) const {
  Vector x(n_);
  solve(b, x, consistency_tol);
  return x;
}

Vector dense_pseudo_solve(const DenseMatrix& a, std::span<const double> b,
                          std::optional<Vector> kernel) {
  return DensePseudoSolver(a, std::move(kernel)).solve(b);
}

} // namespace uamg
