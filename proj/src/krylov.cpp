#include "uamg/krylov.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "uamg/error.hpp"

namespace uamg {

ANormErrorMonitor::ANormErrorMonitor(const SparseMatrix& a, Vector u_star)
    : a_(&a), u_star_(std::move(u_star)), diff_(u_star_.size()), adiff_(u_star_.size()) {
  if (a.nrows() != u_star_.size()) throw DimensionMismatch("monitor: solution length");
}

double ANormErrorMonitor::error(std::span<const double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) diff_[i] = x[i] - u_star_[i];
  spmv(*a_, diff_, adiff_);
  return std::sqrt(std::max(0.0, dot(diff_, adiff_)));
}

void ANormErrorMonitor::start(std::span<const double> x0) { initial_ = error(x0); }

double ANormErrorMonitor::relative(std::span<const double> x) const {
  const double e = error(x);
  return initial_ > 0.0 ? e / initial_ : e;
}

namespace {

using Clock = std::chrono::steady_clock;

// Shared bookkeeping for both solvers.
class Tracker {
public:
  Tracker(const SolveOptions& opts, ANormErrorMonitor* monitor, SolveReport& report)
      : opts_(opts), monitor_(monitor), report_(report) {}

  void start(std::span<const double> x0, std::span<const double> r0, double rz0) {
    r0_ = norm2(r0);
    rz0_ = std::sqrt(std::max(rz0, 0.0));
    if (monitor_) monitor_->start(x0);
    record(x0, r0, rz0);
  }

  // Returns true when the stopping criterion holds for this iterate.
  bool record(std::span<const double> x, std::span<const double> r, double rz) {
    const double rn = norm2(r);
    report_.rel_residual.push_back(r0_ > 0.0 ? rn / r0_ : rn);
    const double pr = std::sqrt(std::max(rz, 0.0));
    report_.rel_precond_residual.push_back(rz0_ > 0.0 ? pr / rz0_ : pr);
    double measure = report_.rel_precond_residual.back();
    if (monitor_) {
      report_.rel_a_norm_error.push_back(monitor_->relative(x));
      measure = report_.rel_a_norm_error.back();
    }
    return measure <= opts_.tol;
  }

private:
  const SolveOptions& opts_;
  ANormErrorMonitor* monitor_;
  SolveReport& report_;
  double r0_ = 1.0;
  double rz0_ = 1.0;
};

void check_sizes(const SparseMatrix& a, std::span<const double> f, std::span<const double> x0,
                 const SolveOptions& opts) {
  if (a.nrows() != a.ncols() || f.size() != a.nrows() || x0.size() != a.nrows())
    throw DimensionMismatch("krylov: operand sizes");
  if (opts.kernel && opts.kernel->size() != a.nrows())
    throw DimensionMismatch("krylov: kernel length");
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

SolveResult pcg(const SparseMatrix& a, std::span<const double> f, const Preconditioner& b,
                std::span<const double> x0, const SolveOptions& opts,
                ANormErrorMonitor* monitor) {
  check_sizes(a, f, x0, opts);
  const auto t0 = Clock::now();
  const auto n = a.nrows();
  SolveResult out{Vector(x0.begin(), x0.end()), {}};
  auto& rep = out.report;
  Tracker track(opts, monitor, rep);

  Vector r(n), z(n), p(n), ap(n);
  residual(a, out.x, f, r);
  if (opts.kernel) project_out(r, *opts.kernel);
  b(r, z);
  if (opts.kernel) project_out(z, *opts.kernel);
  double rz = dot(r, z);
  track.start(out.x, r, rz);
  bool done = (monitor ? rep.rel_a_norm_error.back() : rep.rel_precond_residual.back()) <= opts.tol;
  p = z;

  for (std::size_t k = 1; !done && k <= opts.max_iter; ++k) {
    spmv(a, p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0))
      throw Breakdown("pcg: non-positive curvature p^T A p = " + std::to_string(pap) +
                      " at iteration " + std::to_string(k));
    const double alpha = rz / pap;
    axpy(alpha, p, out.x);
    axpy(-alpha, ap, r);
    if (opts.kernel) project_out(r, *opts.kernel);
    b(r, z);
    if (opts.kernel) project_out(z, *opts.kernel);
    const double rz_new = dot(r, z);
    rep.iterations = k;
    done = track.record(out.x, r, rz_new);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  rep.converged = done;
  rep.max_stored_directions = 1;
  rep.solve_seconds = seconds_since(t0);
  return out;
}

SolveResult fcg(const SparseMatrix& a, std::span<const double> f, const Preconditioner& b,
                std::span<const double> x0, const SolveOptions& opts,
                ANormErrorMonitor* monitor) {
  check_sizes(a, f, x0, opts);
  if (opts.restart < 1) throw InvalidInput("fcg: restart must be >= 1");
  const auto t0 = Clock::now();
  const auto n = a.nrows();
  SolveResult out{Vector(x0.begin(), x0.end()), {}};
  auto& rep = out.report;
  Tracker track(opts, monitor, rep);

  Vector r(n), z(n);
  residual(a, out.x, f, r);
  if (opts.kernel) project_out(r, *opts.kernel);
  b(r, z);
  if (opts.kernel) project_out(z, *opts.kernel);
  track.start(out.x, r, dot(r, z));
  bool done = (monitor ? rep.rel_a_norm_error.back() : rep.rel_precond_residual.back()) <= opts.tol;

  std::vector<Vector> dirs, adirs;
  std::vector<double> dad;
  dirs.reserve(opts.restart);
  adirs.reserve(opts.restart);
  for (std::size_t k = 1; !done && k <= opts.max_iter; ++k) {
    Vector d = z;
    for (std::size_t i = 0; i < dirs.size(); ++i) axpy(-dot(z, adirs[i]) / dad[i], dirs[i], d);
    Vector ad(n);
    spmv(a, d, ad);
    const double dd = dot(d, ad);
    if (!(dd > 0.0))
      throw Breakdown("fcg: non-positive curvature d^T A d = " + std::to_string(dd) +
                      " at iteration " + std::to_string(k));
    const double alpha = dot(d, r) / dd;
    axpy(alpha, d, out.x);
    axpy(-alpha, ad, r);
    if (opts.kernel) project_out(r, *opts.kernel);

    dirs.push_back(std::move(d));
    adirs.push_back(std::move(ad));
    dad.push_back(dd);
    rep.max_stored_directions = std::max(rep.max_stored_directions, dirs.size());
    if (k % opts.restart == 0) {
      dirs.clear();
      adirs.clear();
      dad.clear();
    }

    b(r, z);
    if (opts.kernel) project_out(z, *opts.kernel);
    rep.iterations = k;
    done = track.record(out.x, r, dot(r, z));
  }
  rep.converged = done;
  rep.solve_seconds = seconds_since(t0);
  return out;
}

} // namespace uamg
