#include "slu1/error.hpp"
#include "slu1/exact.hpp"
#include "slu1/solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace slu1;

TEST_SUITE("exact_models") {
  TEST_CASE("harvey-lawson satisfies its implicit equations") {
    for (double a : {0.0, 0.1, 1.0})
      for (double x : {-0.7, -0.1, 0.3})
        for (double y : {-0.5, 0.05, 0.8}) {
          UV r = harvey_lawson_uv(a, x, y);
          Eigen::Vector2d F = harvey_lawson_residual(a, x, y, r.u, r.v);
          CHECK(F.norm() < 1e-12);
          CHECK(r.v * x - y * r.u >= 0);
        }
  }

  TEST_CASE("harvey-lawson vertex at the origin for a = 0") {
    UV r = harvey_lawson_uv(0.0, 0.0, 0.0);
    CHECK(r.vertex);
    CHECK(r.u == 0);
    CHECK(r.v == 0);
  }

  TEST_CASE("negative parameter rejected") { CHECK_THROWS_AS(harvey_lawson_uv(-1.0, 0, 0), ValidationError); }

  TEST_CASE("affine and two-sheet closed forms") {
    UV r = affine_uv(2, 1, -1, 0.5, 0.25);
    CHECK(r.u == doctest::Approx(2.0));
    CHECK(r.v == doctest::Approx(-0.5));
    UV t = two_sheet_uv(0.3, 0.0);
    CHECK(t.v == 0.0);
    CHECK(t.u == doctest::Approx(-0.5 * std::cosh(0.6)));
    // potential derivatives
    const double e = 1e-6, x = 0.2, y = 0.3;
    CHECK((two_sheet_potential(x, y + e) - two_sheet_potential(x, y - e)) / (2 * e) ==
          doctest::Approx(two_sheet_uv(x, y).u).epsilon(1e-8));
    CHECK((two_sheet_potential(x + e, y) - two_sheet_potential(x - e, y)) / (2 * e) ==
          doctest::Approx(two_sheet_uv(x, y).v).epsilon(1e-8));
  }

  TEST_CASE("sampled pairs carry provenance and parameter") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    SolutionPair p = sample_pair(d, ExactSolutionId::harvey_lawson(0.25));
    CHECK(p.provenance == Provenance::exact_model);
    CHECK(p.a == 0.25);
    CHECK(ExactSolutionId::two_sheet().name() == "two-sheet");
  }
}
