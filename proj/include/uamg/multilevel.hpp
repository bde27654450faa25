#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "uamg/aggregation.hpp"
#include "uamg/dense.hpp"
#include "uamg/poly_smoother.hpp"
#include "uamg/problem.hpp"
#include "uamg/sparse.hpp"

namespace uamg {

enum class CycleKind { amli, namli };

// Polynomial s used by the stationary cycle between levels,
// C_j = s(B_{j+1} A_{j+1}) B_{j+1}, with deg s = inner_degree - 1.
enum class AmliPolynomial {
  // s = best uniform approximation of 1/t on [theta0, 1].
  best_reciprocal,
  // 1 - t s(t) is the scaled and shifted Chebyshev polynomial on [theta0, 1].
  chebyshev,
};

struct CycleConfig {
  CycleKind cycle = CycleKind::namli;
  std::size_t pre_smooth = 1;
  std::size_t post_smooth = 1;
  std::size_t inner_degree = 2; // nu: coarse solves per level (2 = W-cycle)
  std::size_t smoother_degree = 4;
  std::size_t mis_power = 4;
  double kappa = 10.0; // lambda1 / lambda0 of every smoother
  double amli_theta0 = 0.1;
  AmliPolynomial amli_polynomial = AmliPolynomial::chebyshev;
  std::size_t coarsest_size = 100;
  std::size_t max_levels = 50;
  std::optional<std::uint64_t> seed = 0;

  // Throws InvalidInput when a field is out of range.
  void validate() const;
};

struct Level {
  SparseMatrix a;
  std::optional<Partition> partition; // absent on the coarsest level
  std::optional<PolySmoother> smoother;
  double lambda1 = 0.0;

  std::size_t size() const noexcept { return a.nrows(); }
};

struct Complexities {
  double grid = 1.0;
  double op = 1.0;
};

// Immutable ladder of operators from finest (index 0) to coarsest.
class Hierarchy {
public:
  // Repeated (distance-k MIS, aggregation, Galerkin product) until the
  // level size drops below cfg.coarsest_size. Throws InvalidInput on
  // coarsening stagnation or when a smoother is not positive.
  static Hierarchy setup(const ProblemInstance& p, const CycleConfig& cfg);

  std::size_t num_levels() const noexcept { return levels_.size(); }
  const Level& level(std::size_t j) const { return levels_.at(j); }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  const CycleConfig& config() const noexcept { return config_; }
  const std::optional<Vector>& kernel() const noexcept { return kernel_; }
  const DensePseudoSolver& coarsest_solver() const noexcept { return coarsest_; }

  // Monomial coefficients of the stationary stabilization polynomial s.
  const std::vector<double>& amli_coeffs() const noexcept { return amli_coeffs_; }

  Complexities complexities() const;

  // FNV-1a over every level array; equal hierarchies hash equal.
  std::uint64_t fingerprint() const;

private:
  std::vector<Level> levels_;
  DensePseudoSolver coarsest_;
  std::optional<Vector> kernel_;
  CycleConfig config_;
  std::vector<double> amli_coeffs_;
};

// Monomial coefficients of s (lowest first), degree nu - 1.
std::vector<double> amli_polynomial(AmliPolynomial kind, std::size_t nu, double theta0);

// Applies the level preconditioners of a hierarchy. Holds per-level
// scratch space, so one instance must not be shared between concurrent
// solves; the hierarchy itself can be.
class MultilevelPreconditioner {
public:
  explicit MultilevelPreconditioner(const Hierarchy& h);

  const Hierarchy& hierarchy() const noexcept { return *h_; }

  // out = B_j r. In AMLI mode B_j is a fixed symmetric linear operator; in
  // N-AMLI mode it depends nonlinearly on r.
  void apply(std::size_t j, std::span<const double> r, std::span<double> out);
  Vector apply(std::size_t j, std::span<const double> r);

  // Number of B_j applications since construction (or reset_counts).
  const std::vector<std::size_t>& apply_counts() const noexcept { return counts_; }
  void reset_counts();

private:
  struct Workspace {
    Vector res, tmp, coarse_rhs, coarse_sol;
    PolySmoother::Workspace smooth;
    // coarse-size scratch for the stabilization polynomial / inner FCG
    Vector y, z, w, r, q;
    std::vector<Vector> dirs, adirs;
  };

  void coarse_correction(std::size_t j, std::span<const double> rhs, std::span<double> out);
  void smooth(std::size_t j, std::span<const double> r, std::span<double> x, Workspace& ws);

  const Hierarchy* h_;
  std::vector<Workspace> ws_;
  std::vector<std::size_t> counts_;
};

// One-shot B_j r with fresh scratch space.
Vector precond_apply(const Hierarchy& h, std::span<const double> r, std::size_t j = 0);

using CoarseSolve = std::function<Vector(std::span<const double>)>;

// y = w + P C P^T (f - A w), then v = y + R (f - A y), where C stands for
// the action of A_H^dagger.
Vector two_level_apply(const SparseMatrix& a, const Partition& p, const PolySmoother& smoother,
                       const CoarseSolve& coarse_solve, std::span<const double> w,
                       std::span<const double> f);

// P^T v and P v for the piecewise-constant interpolation of a partition.
void restrict_to(const Partition& p, std::span<const double> fine, std::span<double> coarse);
void prolong_add(const Partition& p, std::span<const double> coarse, std::span<double> fine);

} // namespace uamg
