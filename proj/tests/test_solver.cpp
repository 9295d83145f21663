#include "slu1/error.hpp"
#include "slu1/solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace slu1;

namespace {

// Harvey-Lawson boundary data as a sampled datum: f is recovered from u, v
// by f(cos t, sin t) = integral of (v dx + u dy) along the circle.
BoundaryData hl_boundary(double a, int m) {
  std::vector<double> s(m);
  double f = 0;
  const int sub = 64;
  for (int i = 0; i < m; ++i) {
    s[i] = f;
    for (int j = 0; j < sub; ++j) {
      double t0 = 2 * M_PI * (i + (j + 0.5) / sub) / m;
      UV r = harvey_lawson_uv(a, std::cos(t0), std::sin(t0));
      f += (r.v * -std::sin(t0) + r.u * std::cos(t0)) * 2 * M_PI / (m * sub);
    }
  }
  return BoundaryData::sampled(s);
}

} // namespace

TEST_SUITE("elliptic_solver") {
  TEST_CASE("affine data is solved exactly") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    SolutionPair p = solve_potential(d, BoundaryData::fourier(0.0, {0, 0.4}, {0, -0.3}), 0.7, SolverOptions{});
    for (int k = 0; k < d->size(); ++k) {
      CHECK(p.u[k] == doctest::Approx(-0.3).epsilon(1e-9));
      CHECK(p.v[k] == doctest::Approx(0.4).epsilon(1e-9));
    }
  }

  TEST_CASE("harvey-lawson data reproduces the exact solution") {
    auto d = build_domain(DomainKind::unit_disc, 65, 512);
    SolutionPair p = solve_potential(d, hl_boundary(1.0, 512), 1.0, SolverOptions{});
    double e = 0;
    for (int k = 0; k < d->size(); ++k) {
      UV r = harvey_lawson_uv(1.0, d->x(k), d->y(k));
      e = std::max({e, std::abs(p.u[k] - r.u), std::abs(p.v[k] - r.v)});
    }
    CHECK(e < 5e-3);
  }

  TEST_CASE("odd data gives an odd potential and v = 0 on the axis") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    SolutionPair p = solve_potential(d, BoundaryData::fourier(0.0, {}, {0, 0.5, 0.2}), 0.3, SolverOptions{});
    double e = 0;
    for (int k = 0; k < d->size(); ++k) e = std::max(e, std::abs((*p.f)[k] + (*p.f)[d->mirror(k)]));
    CHECK(e < 1e-10);
  }

  TEST_CASE("maximum principle on random data") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    SolutionPair p = solve_potential(d, BoundaryData::fourier(0.0, {0, 0.3, -0.5, 0.2}, {0, 0.1, 0.4}), 0.5,
                                     SolverOptions{});
    CHECK(check_max_principle(p).ok());
  }

  TEST_CASE("newton failure is reported with its history") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    SolverOptions o;
    o.max_iterations = 1;
    try {
      solve_potential(d, BoundaryData::fourier(0.0, {0, 0, 2.0}), 0.01, o);
      FAIL("expected divergence");
    } catch (const NewtonDivergence& e) {
      CHECK(!e.residuals.empty());
    }
  }

  TEST_CASE("invalid options are rejected") {
    SolverOptions o;
    o.schedule = {1.0, 1.0};
    CHECK_THROWS_AS(o.validate(), ValidationError);
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    SolverOptions z;
    CHECK_THROWS_AS(solve_potential(d, BoundaryData::zero(), 0.0, z), ValidationError);
  }

  TEST_CASE("v-equation path reproduces harvey-lawson") {
    auto d = build_domain(DomainKind::unit_disc, 65, 256);
    std::vector<double> vb(256);
    for (int i = 0; i < 256; ++i) {
      double t = 2 * M_PI * i / 256;
      vb[i] = harvey_lawson_uv(1.0, std::cos(t), std::sin(t)).v;
    }
    SolutionPair q = solve_v(d, BoundaryData::sampled(vb), 1.0, {0.0, 0.0}, SolverOptions{});
    double ev = 0, eu = 0;
    for (int k = 0; k < d->size(); ++k) {
      UV r = harvey_lawson_uv(1.0, d->x(k), d->y(k));
      ev = std::max(ev, std::abs(q.v[k] - r.v));
      eu = std::max(eu, std::abs(q.u[k] - r.u));
    }
    CHECK(ev < 5e-3);
    CHECK(eu < 2e-2);
    CHECK(q.u[d->origin()] == 0.0);
  }

  TEST_CASE("continuation converges and is Cauchy") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    SolutionPair p = continuation_to_zero(d, BoundaryData::fourier(0.0, {0, 0.5, 0.2}), SolverOptions{});
    CHECK(p.a == 0.0);
    CHECK(p.provenance == Provenance::continuation_limit);
    CHECK(p.log.size() == SolverOptions::default_schedule().size());
    CHECK(p.log.back().c0_increment <= SolverOptions{}.cauchy_tolerance);
  }

  TEST_CASE("pde residual of a sampled exact model is small off the band") {
    auto d = build_domain(DomainKind::unit_disc, 65, 256);
    PdeResidual r = pde_residual(sample_pair(d, ExactSolutionId::harvey_lawson(0.5)));
    CHECK(r.max_unmasked < 1e-2);
  }
}
