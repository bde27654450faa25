#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uamg/chebyshev.hpp"
#include "uamg/sparse.hpp"

namespace uamg {

// delta^m (kappa - 1) / 2 with delta = (sqrt(kappa) - 1) / (sqrt(kappa) + 1):
// max over [lambda0, lambda1] of |1 - x q_m(x)| for the best uniform
// approximation q_m of 1/x, kappa = lambda1 / lambda0.
double error_Em(std::size_t m, double kappa);

double delta_of(double kappa);

// Smallest degree for which the damping factor on [lambda0, lambda1] stays
// below rho and the polynomial remains positive at lambda1.
std::size_t min_degree(double rho, double kappa, double lambda1);

// Relaxation R = q_m(A) where q_m is the best uniform approximation to 1/x
// on [lambda0, lambda1]. Applied with the Clenshaw recurrence in the mapped
// operator (2A - (lambda1 + lambda0) I) / (lambda1 - lambda0).
class PolySmoother {
public:
  PolySmoother() = default;

  // Runs the Remez construction, cross-checks the levelled error against
  // the closed form and rejects polynomials that are not positive on
  // (0, lambda1]. Throws InvalidInput on a bad interval or degree,
  // ConvergenceFailure when Remez stalls or disagrees with error_Em.
  static PolySmoother build(double lambda0, double lambda1, std::size_t m);

  double lambda0() const noexcept { return series_.lo(); }
  double lambda1() const noexcept { return series_.hi(); }
  std::size_t degree() const noexcept { return series_.degree(); }
  double kappa() const noexcept { return lambda1() / lambda0(); }
  double delta() const noexcept { return delta_of(kappa()); }
  const std::vector<double>& cheb_coeffs() const noexcept { return series_.coeffs(); }
  const ChebyshevSeries& series() const noexcept { return series_; }
  const std::vector<double>& alternation_points() const noexcept { return alternation_; }
  const std::vector<double>& alternation_errors() const noexcept { return alternation_err_; }

  // Scalar q_m(x).
  double operator()(double x) const noexcept { return series_(x); }

  // Two scratch vectors of the operator size.
  struct Workspace {
    Vector b1, b2;
  };

  // out = q_m(A) r using exactly m products with A.
  void apply(const SparseMatrix& a, std::span<const double> r, std::span<double> out,
             Workspace& ws) const;
  Vector apply(const SparseMatrix& a, std::span<const double> r) const;

  // y + q_m(A)(f - A y)
  Vector smoothed_iterate(const SparseMatrix& a, std::span<const double> f,
                          std::span<const double> y) const;

private:
  ChebyshevSeries series_;
  std::vector<double> alternation_;
  std::vector<double> alternation_err_;
};

} // namespace uamg
