#include "uamg/multilevel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "uamg/error.hpp"

namespace uamg {

namespace {

class Fnv1a {
public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  template <class T>
  void span(std::span<const T> s) {
    const std::uint64_t n = s.size();
    bytes(&n, sizeof n);
    bytes(s.data(), s.size_bytes());
  }
  std::uint64_t value() const noexcept { return hash_; }

private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace

void CycleConfig::validate() const {
  if (inner_degree < 1) throw InvalidInput("inner degree must be >= 1");
  if (smoother_degree < 1) throw InvalidInput("smoother degree must be >= 1");
  if (mis_power < 1) throw InvalidInput("MIS power must be >= 1");
  if (!(kappa > 1.0)) throw InvalidInput("kappa must be > 1");
  if (!(amli_theta0 > 0.0 && amli_theta0 < 1.0)) throw InvalidInput("theta0 must lie in (0, 1)");
  if (coarsest_size < 1) throw InvalidInput("coarsest size must be >= 1");
  if (max_levels < 1) throw InvalidInput("max levels must be >= 1");
}

std::vector<double> amli_polynomial(AmliPolynomial kind, std::size_t nu, double theta0) {
  if (nu < 1) throw InvalidInput("AMLI degree must be >= 1");
  if (!(theta0 > 0.0 && theta0 < 1.0)) throw InvalidInput("theta0 must lie in (0, 1)");
  if (kind == AmliPolynomial::best_reciprocal)
    return remez_reciprocal(theta0, 1.0, nu - 1).poly.monomial_coeffs();

  // p(t) = T_nu((1 + theta - 2t) / (1 - theta)) / T_nu((1 + theta) / (1 - theta));
  // in the variable mapped from [theta, 1] to [-1, 1] the argument is -u.
  const double y0 = (1.0 + theta0) / (1.0 - theta0);
  const double tnu = std::cosh(static_cast<double>(nu) * std::acosh(y0));
  std::vector<double> cheb(nu + 1, 0.0);
  cheb[nu] = (nu % 2 == 0 ? 1.0 : -1.0) / tnu;
  const auto p = ChebyshevSeries(theta0, 1.0, std::move(cheb)).monomial_coeffs();
  // 1 - t s(t) = p(t)  =>  s_{i-1} = -p_i
  std::vector<double> s(nu);
  for (std::size_t i = 1; i <= nu; ++i) s[i - 1] = -p[i];
  return s;
}

Hierarchy Hierarchy::setup(const ProblemInstance& p, const CycleConfig& cfg) {
  cfg.validate();
  if (p.a.nrows() != p.a.ncols() || p.a.nrows() == 0)
    throw InvalidInput("setup needs a nonempty square operator");

  Hierarchy h;
  h.config_ = cfg;
  h.kernel_ = p.kernel;
  h.amli_coeffs_ = amli_polynomial(cfg.amli_polynomial, cfg.inner_degree, cfg.amli_theta0);

  SparseMatrix current = p.a;
  for (std::size_t j = 0;; ++j) {
    Level lvl;
    lvl.lambda1 = inf_norm(current);
    const auto n = current.nrows();
    if (n < cfg.coarsest_size || j + 1 == cfg.max_levels) {
      lvl.a = std::move(current);
      h.levels_.push_back(std::move(lvl));
      break;
    }
    const auto adj = Adjacency::from_pattern(current);
    const auto level_seed = cfg.seed ? std::optional<std::uint64_t>(*cfg.seed + j) : std::nullopt;
    const auto roots = mis_distance_k(adj, cfg.mis_power, level_seed);
    auto part = build_aggregates(adj, roots, cfg.mis_power);
    if (part.num_aggregates() == n)
      throw InvalidInput("coarsening stagnated on level " + std::to_string(j) + " (" +
                         std::to_string(n) + " unknowns)");
    auto coarse = galerkin(current, part);
    try {
      lvl.smoother = PolySmoother::build(lvl.lambda1 / cfg.kappa, lvl.lambda1, cfg.smoother_degree);
    } catch (const InvalidInput& e) {
      throw InvalidInput("level " + std::to_string(j) + " smoother: " + e.what());
    }
    lvl.partition = std::move(part);
    lvl.a = std::move(current);
    h.levels_.push_back(std::move(lvl));
    current = std::move(coarse);
  }

  std::optional<Vector> coarse_kernel;
  if (p.kernel) coarse_kernel = Vector(h.levels_.back().size(), 1.0);
  h.coarsest_ = DensePseudoSolver(to_dense(h.levels_.back().a), std::move(coarse_kernel));
  return h;
}

Complexities Hierarchy::complexities() const {
  double n = 0.0, nnz = 0.0;
  for (const auto& l : levels_) {
    n += static_cast<double>(l.size());
    nnz += static_cast<double>(l.a.nnz());
  }
  return {n / static_cast<double>(levels_.front().size()),
          nnz / static_cast<double>(levels_.front().a.nnz())};
}

std::uint64_t Hierarchy::fingerprint() const {
  Fnv1a f;
  for (const auto& l : levels_) {
    f.span(l.a.row_offsets());
    f.span(l.a.col_indices());
    f.span(l.a.values());
    if (l.partition) {
      f.span(std::span<const std::size_t>(l.partition->assignment()));
      f.span(std::span<const std::size_t>(l.partition->roots()));
    }
    if (l.smoother) f.span(std::span<const double>(l.smoother->cheb_coeffs()));
  }
  return f.value();
}

void restrict_to(const Partition& p, std::span<const double> fine, std::span<double> coarse) {
  if (fine.size() != p.num_vertices() || coarse.size() != p.num_aggregates())
    throw DimensionMismatch("restrict: vector sizes");
  std::fill(coarse.begin(), coarse.end(), 0.0);
  for (std::size_t i = 0; i < fine.size(); ++i) coarse[p.aggregate_of(i)] += fine[i];
}

void prolong_add(const Partition& p, std::span<const double> coarse, std::span<double> fine) {
  if (fine.size() != p.num_vertices() || coarse.size() != p.num_aggregates())
    throw DimensionMismatch("prolong: vector sizes");
  for (std::size_t i = 0; i < fine.size(); ++i) fine[i] += coarse[p.aggregate_of(i)];
}

MultilevelPreconditioner::MultilevelPreconditioner(const Hierarchy& h)
    : h_(&h), ws_(h.num_levels()), counts_(h.num_levels(), 0) {
  const auto nu = h.config().inner_degree;
  for (std::size_t j = 0; j + 1 < h.num_levels(); ++j) {
    const auto n = h.level(j).size();
    const auto nc = h.level(j + 1).size();
    auto& ws = ws_[j];
    ws.res.resize(n);
    ws.tmp.resize(n);
    ws.coarse_rhs.resize(nc);
    ws.coarse_sol.resize(nc);
    for (auto* v : {&ws.y, &ws.z, &ws.w, &ws.r, &ws.q}) v->resize(nc);
    ws.dirs.assign(nu, Vector(nc));
    ws.adirs.assign(nu, Vector(nc));
  }
}

void MultilevelPreconditioner::reset_counts() { std::fill(counts_.begin(), counts_.end(), 0); }

Vector MultilevelPreconditioner::apply(std::size_t j, std::span<const double> r) {
  Vector out(r.size());
  apply(j, r, out);
  return out;
}

void MultilevelPreconditioner::smooth(std::size_t j, std::span<const double> r,
                                      std::span<double> x, Workspace& ws) {
  const auto& lvl = h_->level(j);
  residual(lvl.a, x, r, ws.res);
  lvl.smoother->apply(lvl.a, ws.res, ws.tmp, ws.smooth);
  axpy(1.0, ws.tmp, x);
}

void MultilevelPreconditioner::apply(std::size_t j, std::span<const double> r,
                                     std::span<double> out) {
  const auto& lvl = h_->level(j);
  if (r.size() != lvl.size() || out.size() != lvl.size())
    throw DimensionMismatch("preconditioner: vector size does not match level " +
                            std::to_string(j));
  ++counts_[j];
  if (j + 1 == h_->num_levels()) {
    // The restricted residual is consistent up to cancellation error,
    // which can dominate when the residual itself is tiny.
    Vector rhs(r.begin(), r.end());
    if (h_->kernel()) project_out(rhs, Vector(rhs.size(), 1.0));
    h_->coarsest_solver().solve(rhs, out);
    return;
  }
  const auto& cfg = h_->config();
  auto& ws = ws_[j];
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t s = 0; s < cfg.pre_smooth; ++s) smooth(j, r, out, ws);
  residual(lvl.a, out, r, ws.res);
  restrict_to(*lvl.partition, ws.res, ws.coarse_rhs);
  coarse_correction(j, ws.coarse_rhs, ws.coarse_sol);
  prolong_add(*lvl.partition, ws.coarse_sol, out);
  for (std::size_t s = 0; s < cfg.post_smooth; ++s) smooth(j, r, out, ws);
}

void MultilevelPreconditioner::coarse_correction(std::size_t j, std::span<const double> rhs,
                                                 std::span<double> out) {
  const auto next = j + 1;
  const auto& a = h_->level(next).a;
  const auto& cfg = h_->config();
  auto& ws = ws_[j];

  // Exact solve below: neither stabilization nor inner iterations help.
  if (next + 1 == h_->num_levels()) {
    apply(next, rhs, out);
    return;
  }

  if (cfg.cycle == CycleKind::amli) {
    // s(BA) B rhs by Horner's rule in BA.
    const auto& s = h_->amli_coeffs();
    apply(next, rhs, ws.y);
    for (std::size_t i = 0; i < ws.y.size(); ++i) ws.z[i] = s.back() * ws.y[i];
    for (std::size_t k = s.size() - 1; k-- > 0;) {
      spmv(a, ws.z, ws.w);
      apply(next, ws.w, ws.q);
      for (std::size_t i = 0; i < ws.z.size(); ++i) ws.z[i] = s[k] * ws.y[i] + ws.q[i];
    }
    std::copy(ws.z.begin(), ws.z.end(), out.begin());
    return;
  }

  // Nonlinear AMLI: nu steps of flexible CG from a zero initial guess.
  std::fill(out.begin(), out.end(), 0.0);
  std::copy(rhs.begin(), rhs.end(), ws.r.begin());
  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0) return;
  std::vector<double> dad(cfg.inner_degree, 0.0);
  for (std::size_t it = 0; it < cfg.inner_degree; ++it) {
    apply(next, ws.r, ws.z);
    auto& d = ws.dirs[it];
    std::copy(ws.z.begin(), ws.z.end(), d.begin());
    for (std::size_t i = 0; i < it; ++i) axpy(-dot(ws.z, ws.adirs[i]) / dad[i], ws.dirs[i], d);
    spmv(a, d, ws.adirs[it]);
    dad[it] = dot(d, ws.adirs[it]);
    if (!(dad[it] > 0.0))
      throw Breakdown("inner flexible CG on level " + std::to_string(next) +
                      ": non-positive curvature " + std::to_string(dad[it]));
    const double alpha = dot(d, ws.r) / dad[it];
    axpy(alpha, d, out);
    axpy(-alpha, ws.adirs[it], ws.r);
    if (norm2(ws.r) <= 1e-14 * rhs_norm) break;
  }
}

Vector precond_apply(const Hierarchy& h, std::span<const double> r, std::size_t j) {
  MultilevelPreconditioner b(h);
  return b.apply(j, r);
}

Vector two_level_apply(const SparseMatrix& a, const Partition& p, const PolySmoother& smoother,
                       const CoarseSolve& coarse_solve, std::span<const double> w,
                       std::span<const double> f) {
  const auto n = a.nrows();
  if (w.size() != n || f.size() != n || p.num_vertices() != n)
    throw DimensionMismatch("two_level_apply: operand sizes");
  Vector res(n), rc(p.num_aggregates());
  residual(a, w, f, res);
  restrict_to(p, res, rc);
  const Vector ec = coarse_solve(rc);
  Vector y(w.begin(), w.end());
  prolong_add(p, ec, y);
  return smoother.smoothed_iterate(a, f, y);
}

} // namespace uamg
