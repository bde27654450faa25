#include "uamg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "uamg/dense.hpp"
#include "uamg/error.hpp"
#include "uamg/problem.hpp"

namespace uamg {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    std::ostringstream msg;
    msg << what << ": " << n << " unknowns exceed the dense cap of " << cap;
    throw SizeCapExceeded(msg.str());
  }
}

Mat to_eigen(const SparseMatrix& a) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(a.nrows()), static_cast<Eigen::Index>(a.ncols()));
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[k])) = vals[k];
  }
  return m;
}

// Orthonormal basis of the range of a symmetric positive semidefinite
// matrix, with the matching eigenvalues.
struct RangeBasis {
  Mat v;
  Vec lambda;
};

RangeBasis range_basis(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(a);
  if (eig.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolve failed");
  const Vec& ev = eig.eigenvalues();
  const double cut = 1e-10 * std::max(std::abs(ev.maxCoeff()), 1e-300);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cut) keep.push_back(i);
  RangeBasis out{Mat(a.rows(), static_cast<Eigen::Index>(keep.size())),
                 Vec(static_cast<Eigen::Index>(keep.size()))};
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    out.v.col(kk) = eig.eigenvectors().col(keep[k]);
    out.lambda(kk) = ev(keep[k]);
  }
  return out;
}

// Eigenvalues of the pencil (M, A) on range(A), ascending.
Vec pencil_on_range(const RangeBasis& basis, const Mat& m) {
  const Vec inv_sqrt = basis.lambda.array().rsqrt();
  const Mat w = basis.v * inv_sqrt.asDiagonal();
  const Mat reduced = w.transpose() * m * w;
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (reduced + reduced.transpose()),
                                         Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolve failed");
  return eig.eigenvalues();
}

} // namespace

std::vector<double> local_poincare(const Partition& p, const Graph& g, std::size_t cap) {
  if (p.num_vertices() != g.num_vertices())
    throw DimensionMismatch("local_poincare: partition and graph sizes differ");
  const auto n_agg = p.num_aggregates();

  // Local index of every vertex inside its aggregate.
  std::vector<std::size_t> local(g.num_vertices());
  for (std::size_t l = 0; l < n_agg; ++l) {
    const auto mem = p.members(l);
    for (std::size_t i = 0; i < mem.size(); ++i) local[mem[i]] = i;
  }
  std::vector<Mat> lap(n_agg);
  for (std::size_t l = 0; l < n_agg; ++l) {
    if (p.size(l) < 2) continue;
    check_cap(p.size(l), cap, "local_poincare");
    const auto s = static_cast<Eigen::Index>(p.size(l));
    lap[l] = Mat::Zero(s, s);
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edges()[e];
    const auto l = p.aggregate_of(u);
    if (p.aggregate_of(v) != l) continue;
    const auto i = static_cast<Eigen::Index>(local[u]);
    const auto j = static_cast<Eigen::Index>(local[v]);
    const double w = g.weight(e);
    lap[l](i, i) += w;
    lap[l](j, j) += w;
    lap[l](i, j) -= w;
    lap[l](j, i) -= w;
  }

  std::vector<double> out(n_agg, std::numeric_limits<double>::infinity());
  for (std::size_t l = 0; l < n_agg; ++l) {
    if (p.size(l) < 2) continue;
    Eigen::SelfAdjointEigenSolver<Mat> eig(lap[l], Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw ConvergenceFailure("local eigensolve failed");
    const double fiedler = eig.eigenvalues()(1);
    if (!(fiedler > 1e-12 * std::max(1.0, eig.eigenvalues().maxCoeff())))
      throw InvalidInput("aggregate " + std::to_string(l) + " is not connected");
    out[l] = fiedler;
  }
  return out;
}

double poincare_constant(std::span<const double> lambda_local) {
  double c = 0.0;
  for (double lam : lambda_local) c = std::max(c, 1.0 / lam);
  return c;
}

double energy(const Graph& g, std::span<const double> v) {
  if (v.size() != g.num_vertices()) throw DimensionMismatch("energy: vector length");
  double s = 0.0;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.edges()[e];
    const double d = v[a] - v[b];
    s += g.weight(e) * d * d;
  }
  for (const auto& bt : g.boundary()) s += bt.value * v[bt.vertex] * v[bt.vertex];
  return s;
}

WapCheck check_wap(const Partition& p, const Graph& g, std::span<const double> v, double c_p) {
  if (v.size() != p.num_vertices() || v.size() != g.num_vertices())
    throw DimensionMismatch("check_wap: vector length");
  const Vector qv = project_Q(p, v);
  double lhs = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) lhs += (v[i] - qv[i]) * (v[i] - qv[i]);
  return {lhs, c_p * energy(g, v)};
}

WapCheck check_wap(const Partition& p, const Graph& g, std::span<const double> v) {
  const auto lam = local_poincare(p, g);
  return check_wap(p, g, v, poincare_constant(lam));
}

double measure_Q_stability(const Partition& p, const SparseMatrix& a, std::size_t cap) {
  const auto n = a.nrows();
  if (p.num_vertices() != n) throw DimensionMismatch("measure_Q_stability: sizes differ");
  check_cap(n, cap, "measure_Q_stability");
  const Mat ad = to_eigen(a);

  Mat q = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t l = 0; l < p.num_aggregates(); ++l) {
    const auto mem = p.members(l);
    const double w = 1.0 / static_cast<double>(mem.size());
    for (auto i : mem)
      for (auto j : mem) q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
  }
  const Mat qaq = q.transpose() * ad * q;
  const auto basis = range_basis(ad);
  if (basis.lambda.size() == 0) return 0.0;
  return std::max(0.0, pencil_on_range(basis, qaq).maxCoeff());
}

double ktg_bound(double c_0, double c_p, double c_nz, std::size_t m) {
  if (m < 2) throw InvalidInput("ktg_bound needs m >= 2");
  if (c_0 < 0.0 || c_p < 0.0 || c_nz < 0.0)
    throw InvalidInput("ktg_bound needs non-negative constants");
  const double lm = std::log(static_cast<double>(m));
  const double c_s = lm * lm / static_cast<double>(m * m);
  const double c_1 = 2.0 * c_0 + 3.0;
  return 8.0 + 8.0 * c_1 * (c_nz * c_p * c_s + 1.0);
}

TwoLevelSpectrum measure_two_level(const SparseMatrix& a, const Partition& p,
                                   const PolySmoother& smoother, std::size_t cap) {
  const auto n = a.nrows();
  if (p.num_vertices() != n) throw DimensionMismatch("measure_two_level: sizes differ");
  check_cap(n, cap, "measure_two_level");
  const auto ni = static_cast<Eigen::Index>(n);
  const Mat ad = to_eigen(a);

  // R = q_m(A), one column at a time through the same kernel the cycle uses.
  Mat r(ni, ni);
  {
    PolySmoother::Workspace ws;
    Vector e(n, 0.0), col(n);
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = 1.0;
      smoother.apply(a, e, col, ws);
      e[j] = 0.0;
      for (std::size_t i = 0; i < n; ++i) r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
  }
  r = 0.5 * (r + r.transpose());

  const auto nh = static_cast<Eigen::Index>(p.num_aggregates());
  Mat pd = Mat::Zero(ni, nh);
  for (std::size_t i = 0; i < n; ++i)
    pd(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p.aggregate_of(i))) = 1.0;

  const Mat ah = pd.transpose() * ad * pd;
  const auto coarse = range_basis(ah);
  const Mat ah_pinv =
      coarse.v * coarse.lambda.cwiseInverse().asDiagonal() * coarse.v.transpose();

  const Mat ra = r * ad;
  const Mat x = (Mat::Identity(ni, ni) - ra) * pd;
  Mat b = 2.0 * r - ra * r + x * ah_pinv * x.transpose();
  b = 0.5 * (b + b.transpose());

  // eig(BA) on range(A) equals the spectrum of the pencil (A B A, A).
  const auto basis = range_basis(ad);
  const Mat aba = ad * b * ad;
  const Vec ev = pencil_on_range(basis, aba);
  TwoLevelSpectrum out{ev.minCoeff(), ev.maxCoeff()};
  if (out.max_eig > 1.0 + 1e-8) {
    std::ostringstream msg;
    msg << "two-level preconditioner is not A-bounded: lambda_max(BA) = " << out.max_eig;
    throw ConvergenceFailure(msg.str());
  }
  return out;
}

ConstantsReport analyze_two_level(const Graph& g, const Partition& p, std::size_t m,
                                  double kappa) {
  const auto prob = laplacian_from_graph(g);
  ConstantsReport rep;
  rep.lambda_local = local_poincare(p, g);
  rep.c_p = poincare_constant(rep.lambda_local);
  rep.c_0 = measure_Q_stability(p, prob.a);
  rep.c_1 = 2.0 * rep.c_0 + 3.0;
  const double lm = std::log(static_cast<double>(m));
  rep.c_s = lm * lm / static_cast<double>(m * m);
  rep.c_nz = static_cast<double>(prob.a.max_row_nnz());
  rep.ktg_bound = ktg_bound(rep.c_0, rep.c_p, rep.c_nz, m);

  const double lambda1 = inf_norm(prob.a);
  const auto smoother = PolySmoother::build(lambda1 / kappa, lambda1, m);
  const auto spectrum = measure_two_level(prob.a, p, smoother);
  rep.measured_kappa_tl = spectrum.kappa();
  rep.max_eig_ba = spectrum.max_eig;

  const auto diam = aggregate_diameters(Adjacency::from_graph(g), p);
  rep.cheeger_diagnostic.resize(p.num_aggregates());
  for (std::size_t l = 0; l < p.num_aggregates(); ++l)
    rep.cheeger_diagnostic[l] = static_cast<double>(p.size(l)) * static_cast<double>(diam[l]);
  return rep;
}

} // namespace uamg
