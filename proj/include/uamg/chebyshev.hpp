#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uamg {

// Polynomial sum_k c_k T_k(t(x)) with t(x) = (2x - hi - lo) / (hi - lo).
class ChebyshevSeries {
public:
  ChebyshevSeries() = default;
  ChebyshevSeries(double lo, double hi, std::vector<double> coeffs);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  double to_unit(double x) const noexcept { return (2.0 * x - hi_ - lo_) / (hi_ - lo_); }
  double from_unit(double t) const noexcept { return 0.5 * ((hi_ - lo_) * t + hi_ + lo_); }

  // Clenshaw evaluation; valid for any x, not only inside [lo, hi].
  double operator()(double x) const noexcept { return eval_unit(to_unit(x)); }
  double eval_unit(double t) const noexcept;

  // Coefficients in the monomial basis of x (lowest degree first).
  std::vector<double> monomial_coeffs() const;

private:
  double lo_ = -1.0;
  double hi_ = 1.0;
  std::vector<double> coeffs_;
};

struct RemezResult {
  ChebyshevSeries poly;
  // Levelled error h: f - p = +-h alternately at the reference points.
  double levelled_error = 0.0;
  // Largest |f - p| over the interval at the final iterate.
  double max_error = 0.0;
  // m + 2 points of alternation, ascending in x.
  std::vector<double> alternation_points;
  // Signed error f - p at the alternation points.
  std::vector<double> alternation_errors;
  int iterations = 0;
};

// Best uniform approximation of 1/x on [lo, hi] (0 < lo < hi) by a
// polynomial of the given degree, by the Remez exchange algorithm started
// from Chebyshev extrema. Iterates until the extremal errors agree to
// `rel_tol`; throws ConvergenceFailure after `max_iter` exchanges.
RemezResult remez_reciprocal(double lo, double hi, std::size_t degree, double rel_tol = 1e-12,
                             int max_iter = 100);

} // namespace uamg
