#include "slu1/error.hpp"
#include "slu1/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace slu1;

TEST_SUITE("grid_domain") {
  TEST_CASE("unit disc lattice is masked and reflection closed") {
    auto d = build_domain(DomainKind::unit_disc, 65, 256);
    CHECK(d->h == doctest::Approx(2.0 / 64));
    for (int k = 0; k < d->size(); ++k) {
      CHECK(d->x(k) * d->x(k) + d->y(k) * d->y(k) < 1.0);
      int m = d->mirror(k);
      REQUIRE(m >= 0);
      CHECK(d->y(m) == -d->y(k));
      CHECK(d->x(m) == d->x(k));
    }
    CHECK(d->origin() >= 0);
  }

  TEST_CASE("resolution below minimum is rejected") {
    CHECK_THROWS_AS(build_domain(DomainKind::unit_disc, 16, 64), ValidationError);
    CHECK_THROWS_AS(build_domain(DomainKind::unit_disc, 65, 32), ValidationError);
  }

  TEST_CASE("larger grid stays symmetric") {
    auto d = build_domain(DomainKind::unit_disc, 129, 512);
    for (int k = 0; k < d->size(); ++k) CHECK(d->mirror(k) >= 0);
  }

  TEST_CASE("node coordinates are reproducible") {
    auto a = build_domain(DomainKind::unit_disc, 33, 128), b = build_domain(DomainKind::unit_disc, 33, 128);
    REQUIRE(a->size() == b->size());
    for (int k = 0; k < a->size(); ++k) {
      CHECK(a->x(k) == b->x(k));
      CHECK(a->y(k) == b->y(k));
    }
  }

  TEST_CASE("differences are exact on low-degree polynomials") {
    auto d = build_domain(DomainKind::unit_disc, 65, 256);
    GridField fx = differentiate(sample(d, [](double x, double) { return x; }), Axis::x);
    GridField fq = differentiate(sample(d, [](double x, double) { return x * x; }), Axis::x);
    double e1 = 0, e2 = 0;
    for (int k = 0; k < d->size(); ++k) {
      e1 = std::max(e1, std::abs(fx[k] - 1.0));
      if (!d->in_layer(k)) e2 = std::max(e2, std::abs(fq[k] - 2 * d->x(k)));
    }
    CHECK(e1 < 1e-12);
    CHECK(e2 < 1e-12);
  }

  TEST_CASE("sin x derivative converges at second order") {
    auto err = [](int n) {
      auto d = build_domain(DomainKind::unit_disc, n, 256);
      GridField g = differentiate(sample(d, [](double x, double) { return std::sin(x); }), Axis::x);
      double e = 0;
      for (int k = 0; k < d->size(); ++k)
        if (!d->in_layer(k)) e = std::max(e, std::abs(g[k] - std::cos(d->x(k))));
      return e;
    };
    double order = std::log2(err(65) / err(129));
    CHECK(order >= 1.9);
  }

  TEST_CASE("bicubic interpolation reproduces cubics") {
    auto d = build_domain(DomainKind::unit_disc, 65, 256);
    auto g = [](double x, double y) { return x * x * x - 2 * x * y * y + y; };
    GridField f = sample(d, g);
    CHECK(interpolate(f, 0.123, -0.321) == doctest::Approx(g(0.123, -0.321)).epsilon(1e-12));
  }

  TEST_CASE("bilinear interpolation on the edges of outermost cells") {
    auto d = build_domain(DomainKind::unit_disc, 17, 64);
    GridField f = sample(d, [](double x, double y) { return 2 * x - y; });
    int checked = 0;
    for (int k = 0; k < d->size(); ++k) {
      const int i = d->col(k), j = d->row(k);
      // top edge of a complete cell whose upper neighbour cell is missing
      if (d->index(i + 1, j) < 0 || d->index(i, j - 1) < 0 || d->index(i + 1, j - 1) < 0) continue;
      if (d->index(i, j + 1) >= 0 && d->index(i + 1, j + 1) >= 0) continue;
      const double x = d->x(k) + 0.3 * d->h, y = d->y(k);
      CHECK(interpolate(f, x, y) == doctest::Approx(2 * x - y).epsilon(1e-12));
      ++checked;
    }
    CHECK(checked > 0);
  }

  TEST_CASE("csv layout") {
    auto d = build_domain(DomainKind::unit_disc, 17, 64);
    std::ostringstream os;
    write_csv(os, sample(d, [](double x, double y) { return x + y; }));
    std::string s = os.str();
    CHECK(s.rfind("x,y,value\n", 0) == 0);
    int rows = 0;
    for (char c : s) rows += c == '\n';
    CHECK(rows == d->size() + 1);
    CHECK(format_double(0.1) == "0.10000000000000001");
  }
}
