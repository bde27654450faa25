#include "uamg/poly_smoother.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uamg/error.hpp"

namespace uamg {

double delta_of(double kappa) {
  const double s = std::sqrt(kappa);
  return (s - 1.0) / (s + 1.0);
}

double error_Em(std::size_t m, double kappa) {
  if (!(kappa > 1.0)) throw InvalidInput("error_Em needs kappa > 1");
  return std::pow(delta_of(kappa), static_cast<double>(m)) * (kappa - 1.0) / 2.0;
}

std::size_t min_degree(double rho, double kappa, double lambda1) {
  if (!(rho > 0.0 && rho < 1.0)) throw InvalidInput("min_degree needs 0 < rho < 1");
  if (!(kappa > 1.0)) throw InvalidInput("min_degree needs kappa > 1");
  if (!(lambda1 > 0.0)) throw InvalidInput("min_degree needs lambda1 > 0");
  const double damping = std::abs(std::log(2.0 * rho / (kappa - 1.0)));
  const double positivity = std::abs(std::log(2.0 / (lambda1 * (kappa - 1.0))));
  const double bound = std::max(damping, positivity) / std::abs(std::log(delta_of(kappa)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bound)));
}

PolySmoother PolySmoother::build(double lambda0, double lambda1, std::size_t m) {
  if (!(lambda0 > 0.0) || !(lambda0 < lambda1))
    throw InvalidInput("smoother interval needs 0 < lambda0 < lambda1");
  if (m < 1) throw InvalidInput("smoother degree must be at least 1");

  const auto remez = remez_reciprocal(lambda0, lambda1, m);
  const double kappa = lambda1 / lambda0;
  const double expected = error_Em(m, kappa);
  const double measured = lambda1 * remez.levelled_error;
  if (std::abs(measured - expected) > 1e-6 * expected) {
    std::ostringstream msg;
    msg << "remez error " << measured << " disagrees with closed form " << expected;
    throw ConvergenceFailure(msg.str());
  }

  PolySmoother s;
  s.series_ = remez.poly;
  s.alternation_ = remez.alternation_points;
  s.alternation_err_ = remez.alternation_errors;

  // q_m must be positive on (0, lambda1] for R to be SPD.
  constexpr int samples = 20000;
  for (int i = 1; i <= samples; ++i) {
    const double x = lambda1 * static_cast<double>(i) / samples;
    if (!(s(x) > 0.0)) {
      std::ostringstream msg;
      msg << "degree " << m << " polynomial on [" << lambda0 << ", " << lambda1
          << "] is not positive at x = " << x << "; increase the degree";
      throw InvalidInput(msg.str());
    }
  }
  if (!(s(std::nextafter(0.0, 1.0)) > 0.0))
    throw InvalidInput("smoother polynomial is not positive near 0; increase the degree");
  return s;
}

void PolySmoother::apply(const SparseMatrix& a, std::span<const double> r, std::span<double> out,
                         Workspace& ws) const {
  const auto n = a.nrows();
  if (a.ncols() != n || r.size() != n || out.size() != n)
    throw DimensionMismatch("smoother apply: operand sizes");
  ws.b1.resize(n);
  ws.b2.resize(n);

  const auto& c = series_.coeffs();
  const std::size_t m = c.size() - 1;
  const double alpha = 2.0 / (lambda1() - lambda0());
  const double beta = -(lambda1() + lambda0()) / (lambda1() - lambda0());
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();

  // Clenshaw: b_k = c_k r + 2 T b_{k+1} - b_{k+2}; b_{m+1} = b_{m+2} = 0.
  // b2 holds b_{k+2} and is overwritten in place by b_k.
  auto& b1 = ws.b1;
  auto& b2 = ws.b2;
  for (std::size_t i = 0; i < n; ++i) {
    b1[i] = c[m] * r[i];
    b2[i] = 0.0;
  }
  for (std::size_t k = m; k-- > 1;) {
    for (std::size_t i = 0; i < n; ++i) {
      double ab = 0.0;
      for (auto p = offsets[i]; p < offsets[i + 1]; ++p) ab += vals[p] * b1[cols[p]];
      b2[i] = c[k] * r[i] + 2.0 * (alpha * ab + beta * b1[i]) - b2[i];
    }
    std::swap(b1, b2);
  }
  // q(A) r = c_0 r + T b_1 - b_2
  for (std::size_t i = 0; i < n; ++i) {
    double ab = 0.0;
    for (auto p = offsets[i]; p < offsets[i + 1]; ++p) ab += vals[p] * b1[cols[p]];
    out[i] = c[0] * r[i] + alpha * ab + beta * b1[i] - b2[i];
  }
}

Vector PolySmoother::apply(const SparseMatrix& a, std::span<const double> r) const {
  Workspace ws;
  Vector out(r.size());
  apply(a, r, out, ws);
  return out;
}

Vector PolySmoother::smoothed_iterate(const SparseMatrix& a, std::span<const double> f,
                                      std::span<const double> y) const {
  Vector res(a.nrows());
  residual(a, y, f, res);
  Vector v = apply(a, res);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += y[i];
  return v;
}

} // namespace uamg
