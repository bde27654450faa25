#include "uamg/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/LU>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "uamg/error.hpp"

namespace uamg {

ChebyshevSeries::ChebyshevSeries(double lo, double hi, std::vector<double> coeffs)
    : lo_(lo), hi_(hi), coeffs_(std::move(coeffs)) {
  if (!(lo_ < hi_)) throw InvalidInput("chebyshev series needs lo < hi");
}

double ChebyshevSeries::eval_unit(double t) const noexcept {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) {
    const double b0 = coeffs_[k] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  const double c0 = coeffs_.empty() ? 0.0 : coeffs_[0];
  return c0 + t * b1 - b2;
}

std::vector<double> ChebyshevSeries::monomial_coeffs() const {
  // t = a x + b
  const double a = 2.0 / (hi_ - lo_);
  const double b = -(hi_ + lo_) / (hi_ - lo_);
  const auto n = coeffs_.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  std::vector<double> prev(n, 0.0), cur(n, 0.0), next(n, 0.0);
  prev[0] = 1.0; // T_0
  out[0] += coeffs_[0];
  if (n == 1) return out;
  cur[0] = b;
  cur[1] = a; // T_1
  for (std::size_t i = 0; i < n; ++i) out[i] += coeffs_[1] * cur[i];
  for (std::size_t k = 2; k < n; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      next[i] += 2.0 * b * cur[i];
      next[i + 1] += 2.0 * a * cur[i];
    }
    for (std::size_t i = 0; i < n; ++i) next[i] -= prev[i];
    for (std::size_t i = 0; i < n; ++i) out[i] += coeffs_[k] * next[i];
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return out;
}

namespace {

struct Extremum {
  double t;
  double err;
};

// Solves p(t_i) + (-1)^i h = f(t_i) on the reference; returns h.
double solve_reference(const std::vector<double>& ref, std::size_t degree,
                       const auto& f, std::vector<double>& coeffs) {
  const auto m = static_cast<Eigen::Index>(degree);
  Eigen::MatrixXd sys(m + 2, m + 2);
  Eigen::VectorXd rhs(m + 2);
  for (Eigen::Index i = 0; i < m + 2; ++i) {
    const double t = ref[static_cast<std::size_t>(i)];
    double tkm1 = 1.0, tk = t;
    sys(i, 0) = 1.0;
    if (m >= 1) sys(i, 1) = t;
    for (Eigen::Index k = 2; k <= m; ++k) {
      const double tkp1 = 2.0 * t * tk - tkm1;
      sys(i, k) = tkp1;
      tkm1 = tk;
      tk = tkp1;
    }
    sys(i, m + 1) = (i % 2 == 0) ? 1.0 : -1.0;
    rhs(i) = f(t);
  }
  const Eigen::VectorXd sol = sys.fullPivLu().solve(rhs);
  coeffs.assign(sol.data(), sol.data() + m + 1);
  return sol(m + 1);
}

// One extremum of the error per sign-constant segment of [-1, 1].
std::vector<Extremum> locate_extrema(const auto& err, std::size_t degree) {
  const std::size_t samples = std::max<std::size_t>(4000, 400 * (degree + 2));
  std::vector<double> ts(samples + 1), es(samples + 1);
  for (std::size_t j = 0; j <= samples; ++j) {
    ts[j] = -std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples));
    es[j] = err(ts[j]);
  }
  ts.front() = -1.0;
  ts.back() = 1.0;

  const int bits = std::numeric_limits<double>::digits / 2;
  std::vector<Extremum> out;
  std::size_t seg_begin = 0;
  double seg_lo = -1.0;
  auto close_segment = [&](std::size_t seg_end, double lo_bound, double hi_bound) {
    std::size_t best = seg_begin;
    for (std::size_t j = seg_begin; j <= seg_end; ++j)
      if (std::abs(es[j]) > std::abs(es[best])) best = j;
    const double sign = es[best] >= 0.0 ? 1.0 : -1.0;
    const double a = best > seg_begin ? ts[best - 1] : lo_bound;
    const double b = best < seg_end ? ts[best + 1] : hi_bound;
    Extremum ext{ts[best], es[best]};
    if (b > a) {
      const auto [t, neg] = boost::math::tools::brent_find_minima(
          [&](double t) { return -sign * err(t); }, a, b, bits);
      const double e = -neg * sign;
      if (sign * e > sign * ext.err) ext = {t, e};
    }
    for (double edge : {a, b}) {
      const double e = err(edge);
      if (sign * e > sign * ext.err) ext = {edge, e};
    }
    out.push_back(ext);
  };

  for (std::size_t j = 0; j < samples; ++j) {
    if ((es[j] >= 0.0) == (es[j + 1] >= 0.0)) continue;
    // A zero lies in (ts[j], ts[j+1]); the current segment ends at sample j.
    std::uintmax_t it = 100;
    const auto root = boost::math::tools::toms748_solve(
        err, ts[j], ts[j + 1], es[j], es[j + 1],
        boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3), it);
    const double zero = 0.5 * (root.first + root.second);
    close_segment(j, seg_lo, zero);
    seg_begin = j + 1;
    seg_lo = zero;
  }
  close_segment(samples, seg_lo, 1.0);
  return out;
}

} // namespace

RemezResult remez_reciprocal(double lo, double hi, std::size_t degree, double rel_tol,
                             int max_iter) {
  if (!(lo > 0.0) || !(lo < hi)) throw InvalidInput("remez: need 0 < lo < hi");
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  const auto f = [=](double t) { return 1.0 / (half * t + mid); };

  std::vector<double> ref(degree + 2);
  for (std::size_t i = 0; i < ref.size(); ++i)
    ref[i] = -std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(degree + 1));

  std::vector<double> coeffs;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const double h = solve_reference(ref, degree, f, coeffs);
    const ChebyshevSeries poly(-1.0, 1.0, coeffs);
    const auto err = [&](double t) { return f(t) - poly.eval_unit(t); };
    auto ext = locate_extrema(err, degree);

    if (ext.size() < degree + 2)
      throw ConvergenceFailure("remez: error has only " + std::to_string(ext.size()) +
                               " alternating extrema");
    while (ext.size() > degree + 2) {
      if (std::abs(ext.front().err) < std::abs(ext.back().err))
        ext.erase(ext.begin());
      else
        ext.pop_back();
    }

    double emax = 0.0, emin = std::numeric_limits<double>::infinity();
    for (const auto& e : ext) {
      emax = std::max(emax, std::abs(e.err));
      emin = std::min(emin, std::abs(e.err));
    }
    // |f| <= 1/lo bounds the rounding error of f - p.
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() / lo;
    if (emax - emin <= std::max(rel_tol * emax, floor)) {
      RemezResult res;
      res.poly = ChebyshevSeries(lo, hi, coeffs);
      res.levelled_error = std::abs(h);
      res.max_error = emax;
      for (const auto& e : ext) {
        res.alternation_points.push_back(half * e.t + mid);
        res.alternation_errors.push_back(e.err);
      }
      res.iterations = iter;
      return res;
    }
    for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = ext[i].t;
  }
  throw ConvergenceFailure("remez: no equioscillation after " + std::to_string(max_iter) +
                           " exchanges on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "]");
}

} // namespace uamg
