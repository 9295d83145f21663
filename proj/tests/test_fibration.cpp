#include "slu1/embed.hpp"
#include "slu1/error.hpp"
#include "slu1/fibration.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace slu1;

TEST_SUITE("fibration") {
  TEST_CASE("zero base datum gives affine fibres") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    FibrationFamily fam(d, BoundaryData::zero());
    auto s = fam.solve_fibre({0.4, 0.3, -0.2});
    for (int k = 0; k < d->size(); ++k) {
      CHECK(std::abs(s->u[k] + 0.2) < 1e-12);
      CHECK(std::abs(s->v[k] - 0.3) < 1e-12);
    }
    CHECK(fam.cache_size() == 1);
    fam.solve_fibre({0.4, 0.3, -0.2});
    CHECK(fam.cache_size() == 1);
  }

  TEST_CASE("parameters outside the box are rejected") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    FibrationFamily fam(d, BoundaryData::zero());
    CHECK(!fam.in_box({3.0, 0, 0}));
    CHECK_THROWS_AS(fam.solve_fibre({3.0, 0, 0}), ValidationError);
  }

  TEST_CASE("distinct fibres with equal a are disjoint") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    FibrationFamily fam(d, BoundaryData::fourier(0, {0, 0, 0.3}));
    CHECK(fam.one_max_one_min({0.5, 0.1, 0.2}, {0.5, -0.3, 0.4}));
    DisjointCertificate c = verify_disjoint(fam, {0.5, 0.1, 0.2}, {0.5, -0.3, 0.4});
    CHECK(c.ok());
    CHECK(c.boundary_winding == 0);
  }

  TEST_CASE("inverting a fibre point recovers its parameters") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    FibrationFamily fam(d, BoundaryData::fourier(0, {0, 0, 0.3}, {0, 0, 0, 0.1}));
    for (FibreParams p : {FibreParams(0.5, 0.2, -0.1), FibreParams(-0.3, -0.4, 0.3)}) {
      C3 z = fibre_point(fam, p, 0.2, -0.1, 0.7);
      CHECK((invert_point(fam, z) - p).cwiseAbs().maxCoeff() < 1e-6);
    }
  }

  TEST_CASE("threaded solves match serial solves") {
    auto d = build_domain(DomainKind::unit_disc, 33, 128);
    BoundaryData phi = BoundaryData::fourier(0, {0, 0, 0.3});
    FibrationFamily f1(d, phi), f2(d, phi);
    std::vector<FibreParams> ps = {{0.5, 0, 0}, {0.5, 0.2, 0}, {0.5, 0, 0.2}, {0.25, 0.1, 0.1}};
    f1.solve_all(ps, 1);
    f2.solve_all(ps, 3);
    for (const auto& p : ps) CHECK((f1.solve_fibre(p)->u.values - f2.solve_fibre(p)->u.values).norm() == 0.0);
  }
}

TEST_SUITE("cli_export") {
  TEST_CASE("embedded vertices satisfy the moment map") {
    auto d = build_domain(DomainKind::unit_disc, 17, 64);
    SolutionPair p = sample_pair(d, ExactSolutionId::harvey_lawson(0.5));
    EmbeddedMesh m = embed(p, 16);
    for (const auto& v : m.vertices) {
      double z1 = v[0] * v[0] + v[1] * v[1], z2 = v[2] * v[2] + v[3] * v[3];
      CHECK(std::abs(z1 - z2 - 2 * 0.5) < 1e-10);
    }
    CHECK(m.fixed_points() == 0);
  }

  TEST_CASE("affine pair at a = 0: |z1|^2 = sqrt(b^2 + y^2)") {
    auto d = build_domain(DomainKind::unit_disc, 17, 64);
    SolutionPair p = sample_pair(d, ExactSolutionId::affine(0, 0.3, 0.5));
    EmbeddedMesh m = embed(p, 16);
    for (size_t i = 0; i < m.vertices.size(); ++i) {
      const auto& v = m.vertices[i];
      double y = m.sources[i].y;
      CHECK(std::abs(v[0] * v[0] + v[1] * v[1] - std::hypot(0.5, y)) < 1e-12);
    }
  }

  TEST_CASE("cone point of the a = 0 harvey-lawson fold is the origin") {
    auto d = build_domain(DomainKind::unit_disc, 17, 64);
    EmbeddedMesh m = embed(sample_pair(d, ExactSolutionId::harvey_lawson(0)), 16);
    REQUIRE(m.fixed_points() == 1);
    for (size_t i = 0; i < m.vertices.size(); ++i)
      if (m.sources[i].collapsed)
        for (double c : m.vertices[i]) CHECK(c == 0.0);
  }

  TEST_CASE("two-sheet mesh contains the fixed curve") {
    auto d = build_domain(DomainKind::unit_disc, 17, 64);
    EmbeddedMesh m = embed(sample_pair(d, ExactSolutionId::two_sheet()), 16);
    CHECK(m.fixed_points() == 15);
    for (size_t i = 0; i < m.vertices.size(); ++i)
      if (m.sources[i].collapsed) {
        double x = m.sources[i].x;
        CHECK(m.vertices[i][4] == doctest::Approx(x));
        CHECK(m.vertices[i][5] == doctest::Approx(-0.5 * std::cosh(2 * x)));
      }
  }

  TEST_CASE("U(1) rotation permutes the vertex set") {
    auto d = build_domain(DomainKind::unit_disc, 17, 64);
    SolutionPair p = sample_pair(d, ExactSolutionId::harvey_lawson(0.2));
    const int k = d->origin() + 3;
    auto v0 = embed_point(0.2, d->x(k), d->y(k), p.u[k], p.v[k], 2 * M_PI * 3 / 16);
    EmbeddedMesh m = embed(p, 16);
    double best = INFINITY;
    for (const auto& v : m.vertices) {
      double e = 0;
      for (int c = 0; c < 6; ++c) e = std::max(e, std::abs(v[c] - v0[c]));
      best = std::min(best, e);
    }
    CHECK(best < 1e-12);
  }

  TEST_CASE("obj and csv writers") {
    auto d = build_domain(DomainKind::unit_disc, 17, 64);
    EmbeddedMesh m = embed(sample_pair(d, ExactSolutionId::harvey_lawson(0.2)), 16);
    std::ostringstream obj, csv;
    write_obj(obj, m, Projection::pca);
    write_r6_csv(csv, m);
    CHECK(obj.str().find("\nf ") != std::string::npos);
    CHECK(csv.str().rfind("x,y,theta,fixed,re_z1", 0) == 0);
    CHECK(parse_projection("z3-z1re") == Projection::z3_z1re);
    CHECK_THROWS_AS(parse_projection("xyz"), ValidationError);
  }
}
