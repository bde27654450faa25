#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "uamg/error.hpp"
#include "uamg/krylov.hpp"
#include "uamg/multilevel.hpp"
#include "uamg/problem.hpp"

using namespace uamg;

namespace {

// Jacobi: linear and SPD on the Laplacians used here.
Preconditioner jacobi(const SparseMatrix& a) {
  const auto d = diagonal(a);
  return [d](std::span<const double> r, std::span<double> z) {
    for (std::size_t i = 0; i < r.size(); ++i) z[i] = r[i] / d[i];
  };
}

Preconditioner identity() {
  return [](std::span<const double> r, std::span<double> z) { std::copy(r.begin(), r.end(), z.begin()); };
}

Preconditioner multilevel(MultilevelPreconditioner& b) {
  return [&b](std::span<const double> r, std::span<double> z) {
    const auto y = b.apply(0, r);
    std::copy(y.begin(), y.end(), z.begin());
  };
}

double max_diff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace

TEST_CASE("monitor measures the energy norm") {
  const auto p = grid2d(3);
  const auto sys = manufacture_rhs(p, 1);
  ANormErrorMonitor mon(p.a, sys.u_star);
  CHECK(mon.error(sys.u_star) == 0.0);
  const Vector zero(9, 0.0);
  CHECK(mon.error(zero) == doctest::Approx(std::sqrt(dot(sys.u_star, spmv(p.a, sys.u_star)))));
  mon.start(zero);
  CHECK(mon.relative(zero) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ANormErrorMonitor(p.a, Vector(3, 0.0)), DimensionMismatch);
}

TEST_CASE("pcg solves a consistent singular system") {
  const auto p = grid2d(16);
  const auto sys = manufacture_rhs(p, 2);
  ANormErrorMonitor mon(p.a, sys.u_star);
  SolveOptions o;
  o.kernel = p.kernel;
  o.max_iter = 1000;
  const Vector x0(p.a.nrows(), 0.0);
  const auto res = pcg(p.a, sys.f, jacobi(p.a), x0, o, &mon);
  CHECK(res.report.converged);
  CHECK(res.report.rel_a_norm_error.back() <= 1e-8);
  CHECK(res.report.rel_a_norm_error.size() == res.report.iterations + 1);
  CHECK(res.report.rel_residual.size() == res.report.iterations + 1);
  CHECK(res.report.rel_a_norm_error.front() == doctest::Approx(1.0));
  // CG with an SPD preconditioner decreases the energy error monotonically
  for (std::size_t k = 1; k < res.report.rel_a_norm_error.size(); ++k)
    CHECK(res.report.rel_a_norm_error[k] <= res.report.rel_a_norm_error[k - 1] * (1 + 1e-12));
}

TEST_CASE("flexible CG reduces to pcg for a linear preconditioner") {
  SUBCASE("before the first restart") {
    const auto p = grid2d(4);
    const auto sys = manufacture_rhs(p, 3);
    SolveOptions o;
    o.kernel = p.kernel;
    o.tol = 0.0;
    o.max_iter = 4;
    o.restart = 5;
    const Vector x0(16, 0.0);
    const auto a = pcg(p.a, sys.f, jacobi(p.a), x0, o);
    const auto b = fcg(p.a, sys.f, jacobi(p.a), x0, o);
    CHECK(max_diff(a.x, b.x) <= 1e-12 * norm2(a.x));
  }
  SUBCASE("without restarts, with a multilevel preconditioner") {
    const auto p = grid2d(8);
    CycleConfig c;
    c.cycle = CycleKind::amli;
    c.mis_power = 2;
    c.coarsest_size = 5;
    const auto h = Hierarchy::setup(p, c);
    MultilevelPreconditioner ml(h);
    const auto sys = manufacture_rhs(p, 4);
    ANormErrorMonitor mon(p.a, sys.u_star);
    SolveOptions o;
    o.kernel = p.kernel;
    o.restart = o.max_iter;
    const Vector x0(64, 0.0);
    const auto a = pcg(p.a, sys.f, multilevel(ml), x0, o, &mon);
    const auto b = fcg(p.a, sys.f, multilevel(ml), x0, o, &mon);
    CHECK(a.report.converged);
    CHECK(a.report.iterations == b.report.iterations);
    CHECK(max_diff(a.x, b.x) <= 1e-10 * norm2(a.x));
  }
}

TEST_CASE("restart bookkeeping") {
  const auto p = grid2d(12);
  const auto sys = manufacture_rhs(p, 5);
  ANormErrorMonitor mon(p.a, sys.u_star);
  const Vector x0(p.a.nrows(), 0.0);
  for (std::size_t restart : {1u, 2u, 5u}) {
    SolveOptions o;
    o.kernel = p.kernel;
    o.restart = restart;
    o.max_iter = 5000;
    const auto res = fcg(p.a, sys.f, jacobi(p.a), x0, o, &mon);
    CHECK(res.report.converged);
    CHECK(res.report.max_stored_directions <= restart);
    CHECK(res.report.max_stored_directions >= 1);
  }
  SolveOptions bad;
  bad.restart = 0;
  CHECK_THROWS_AS(fcg(p.a, sys.f, identity(), x0, bad), InvalidInput);
}

TEST_CASE("a satisfied tolerance takes no iterations") {
  const auto p = grid2d(5);
  const auto sys = manufacture_rhs(p, 6);
  ANormErrorMonitor mon(p.a, sys.u_star);
  SolveOptions o;
  o.tol = 1.0;
  o.kernel = p.kernel;
  const Vector x0(25, 0.0);
  CHECK(pcg(p.a, sys.f, identity(), x0, o, &mon).report.iterations == 0);
  CHECK(fcg(p.a, sys.f, identity(), x0, o, &mon).report.iterations == 0);
  CHECK(pcg(p.a, sys.f, identity(), x0, o).report.iterations == 0);
}

TEST_CASE("breakdown and size errors") {
  const auto p = grid2d(5);
  const auto sys = manufacture_rhs(p, 7);
  SolveOptions o;
  o.kernel = p.kernel;
  const Vector x0(25, 0.0);
  // maps everything into the kernel, so every search direction vanishes
  const Preconditioner to_kernel = [](std::span<const double>, std::span<double> z) {
    std::fill(z.begin(), z.end(), 1.0);
  };
  ANormErrorMonitor mon(p.a, sys.u_star);
  CHECK_THROWS_AS(pcg(p.a, sys.f, to_kernel, x0, o, &mon), Breakdown);
  CHECK_THROWS_AS(fcg(p.a, sys.f, to_kernel, x0, o, &mon), Breakdown);
  CHECK_THROWS_AS(pcg(p.a, Vector(3, 0.0), identity(), x0, o), DimensionMismatch);
  SolveOptions k = o;
  k.kernel = Vector(3, 1.0);
  CHECK_THROWS_AS(fcg(p.a, sys.f, identity(), x0, k), DimensionMismatch);
}

TEST_CASE("blind mode stops on the preconditioned residual") {
  const auto p = grid2d(10);
  const auto sys = manufacture_rhs(p, 8);
  SolveOptions o;
  o.kernel = p.kernel;
  o.tol = 1e-10;
  const Vector x0(100, 0.0);
  const auto res = pcg(p.a, sys.f, jacobi(p.a), x0, o);
  CHECK(res.report.converged);
  CHECK(res.report.rel_a_norm_error.empty());
  CHECK(res.report.rel_precond_residual.back() <= 1e-10);
  ANormErrorMonitor mon(p.a, sys.u_star);
  mon.start(x0);
  CHECK(mon.relative(res.x) < 1e-7);
}

TEST_CASE("N-AMLI inside flexible CG") {
  const auto p = grid2d(32);
  CycleConfig c;
  c.coarsest_size = 20;
  const auto h = Hierarchy::setup(p, c);
  MultilevelPreconditioner ml(h);
  const auto sys = manufacture_rhs(p, 9);
  ANormErrorMonitor mon(p.a, sys.u_star);
  SolveOptions o;
  o.kernel = p.kernel;
  const Vector x0(p.a.nrows(), 0.0);
  const auto res = fcg(p.a, sys.f, multilevel(ml), x0, o, &mon);
  CHECK(res.report.converged);
  CHECK(res.report.iterations <= 30);
}
