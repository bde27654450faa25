#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "uamg/aggregation.hpp"
#include "uamg/graph.hpp"
#include "uamg/poly_smoother.hpp"
#include "uamg/sparse.hpp"

namespace uamg {

// Dense eigensolves beyond this many unknowns are refused with SizeCapExceeded.
inline constexpr std::size_t kDenseCap = 2000;

// Two-level constants of a partition together with the bound they imply.
struct ConstantsReport {
  std::vector<double> lambda_local; // +inf for singletons
  double c_p = 0.0;
  double c_0 = 0.0;
  double c_1 = 0.0;
  double c_s = 0.0;
  double c_nz = 0.0;
  double ktg_bound = 0.0;
  double measured_kappa_tl = 0.0;
  double max_eig_ba = 0.0;
  // |V_l| * diam(G_l) per aggregate; informational only.
  std::vector<double> cheeger_diagnostic;
};

// Second-smallest eigenvalue of the Laplacian of every aggregate's induced
// subgraph. Singletons get +infinity.
std::vector<double> local_poincare(const Partition& p, const Graph& g,
                                   std::size_t cap = kDenseCap);

// max over aggregates of 1/lambda_l; 0 when every aggregate is a singleton.
double poincare_constant(std::span<const double> lambda_local);

struct WapCheck {
  double lhs = 0.0; // |v - Qv|^2
  double rhs = 0.0; // c_p (Av, v)
};

// Weak approximation property for one vector. c_p is recomputed from the
// partition unless given.
WapCheck check_wap(const Partition& p, const Graph& g, std::span<const double> v);
WapCheck check_wap(const Partition& p, const Graph& g, std::span<const double> v, double c_p);

// (Av, v) of the graph form, without assembling A.
double energy(const Graph& g, std::span<const double> v);

// Largest mu with |Qv|_A^2 = mu |v|_A^2 over the complement of ker A.
double measure_Q_stability(const Partition& p, const SparseMatrix& a,
                           std::size_t cap = kDenseCap);

// 8 + 8 (2 c_0 + 3) (c_nz c_p ln^2(m) / m^2 + 1). Throws for m < 2.
double ktg_bound(double c_0, double c_p, double c_nz, std::size_t m);

struct TwoLevelSpectrum {
  double min_eig = 0.0; // of BA on the complement of ker A
  double max_eig = 0.0;
  double kappa() const noexcept { return max_eig / min_eig; }
};

// Dense B = Rbar + (I - RA) P A_H^+ P^T (I - AR) with R = q_m(A) and
// Rbar = 2R - RAR; returns the extreme eigenvalues of BA. Throws
// ConvergenceFailure when max_eig exceeds 1 + 1e-8.
TwoLevelSpectrum measure_two_level(const SparseMatrix& a, const Partition& p,
                                   const PolySmoother& smoother, std::size_t cap = kDenseCap);

// Everything above for a graph and partition, with the smoother built on
// [|A|_inf / kappa, |A|_inf].
ConstantsReport analyze_two_level(const Graph& g, const Partition& p, std::size_t m,
                                  double kappa);

} // namespace uamg
