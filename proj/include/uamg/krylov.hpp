#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "uamg/sparse.hpp"

namespace uamg {

// out = B r. May be nonlinear for the flexible solver.
using Preconditioner = std::function<void(std::span<const double>, std::span<double>)>;

// Relative energy-norm error |x - u*|_A / |x0 - u*|_A against a known
// solution. Costs one product with A per evaluation.
class ANormErrorMonitor {
public:
  ANormErrorMonitor(const SparseMatrix& a, Vector u_star);

  // |x - u*|_A
  double error(std::span<const double> x) const;

  // Fixes the normalization; later calls to relative() divide by it.
  void start(std::span<const double> x0);
  double relative(std::span<const double> x) const;

private:
  const SparseMatrix* a_;
  Vector u_star_;
  double initial_ = 1.0;
  mutable Vector diff_, adiff_;
};

struct SolveOptions {
  double tol = 1e-8;
  std::size_t max_iter = 500;
  std::size_t restart = 5; // flexible CG only
  // Residuals and preconditioned residuals are kept orthogonal to it.
  std::optional<Vector> kernel;
};

struct SolveReport {
  std::size_t iterations = 0;
  bool converged = false;
  // Entry k belongs to iterate k (length iterations + 1). The error
  // history is empty in blind mode.
  std::vector<double> rel_a_norm_error;
  std::vector<double> rel_residual;
  // sqrt(r^T B r) / sqrt(r0^T B r0); the blind-mode stopping quantity.
  std::vector<double> rel_precond_residual;
  double solve_seconds = 0.0;
  std::size_t max_stored_directions = 0;
};

struct SolveResult {
  Vector x;
  SolveReport report;
};

// Preconditioned CG. Stops on the relative A-norm error when a monitor is
// given, else on the relative preconditioned residual. Throws Breakdown on
// non-positive curvature.
SolveResult pcg(const SparseMatrix& a, std::span<const double> f, const Preconditioner& b,
                std::span<const double> x0, const SolveOptions& opts,
                ANormErrorMonitor* monitor = nullptr);

// Flexible CG: every new direction is A-orthogonalized against the
// directions stored since the last restart; the store is cleared every
// `opts.restart` iterations while the iterate is kept.
SolveResult fcg(const SparseMatrix& a, std::span<const double> f, const Preconditioner& b,
                std::span<const double> x0, const SolveOptions& opts,
                ANormErrorMonitor* monitor = nullptr);

} // namespace uamg
