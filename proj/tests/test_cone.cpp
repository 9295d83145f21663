#include "slu1/cone.hpp"

#include <doctest.h>

#include <cmath>

using namespace slu1;

TEST_SUITE("cone_ode") {
  TEST_CASE("degenerate values are rejected with their case tag") {
    auto tag = [](double A) {
      try {
        integrate_cone(A);
      } catch (const DegenerateCone& e) {
        return e.tag;
      }
      return std::string();
    };
    CHECK(tag(1.0) == "case (a)");
    CHECK(tag(-1.0) == "case (b)");
    CHECK(tag(0.0) == "case (c)");
  }

  TEST_CASE("turning points solve the cubic") {
    for (double A : {0.1, 0.5, 0.9}) {
      TurningPoints t = turning_points(A);
      for (double w : {t.w_min, t.w_max, t.w3})
        CHECK(std::abs((1 - w) * (1 - w) * (1 + 2 * w) - A * A) < 1e-12);
      CHECK(t.w_min < t.w_max);
      CHECK(t.w3 > 1);
    }
  }

  TEST_CASE("first integral is conserved") {
    ConeTrajectory tr = integrate_cone(0.4, 256, 2);
    CHECK(tr.drift < 1e-8);
    CHECK(tr.samples.size() > 100);
  }

  TEST_CASE("rotation angle limits and oddness") {
    CHECK(compute_phi(0.02).phi == doctest::Approx(-M_PI).epsilon(0.02));
    CHECK(std::abs(compute_phi(0.98).phi + 2 * M_PI / std::sqrt(3.0)) < 0.05);
    CHECK(std::abs(compute_phi(0.3).phi + compute_phi(-0.3).phi) < 1e-8);
    CHECK(compute_phi(0.3).phi > compute_phi(0.6).phi);
  }

  TEST_CASE("inverse and rationality") {
    auto A = phi_inverse(-8 * M_PI / 7);
    REQUIRE(A.has_value());
    CHECK(compute_phi(*A).phi == doctest::Approx(-8 * M_PI / 7).epsilon(1e-9));
    auto pq = rationality_gap(*A, 10);
    REQUIRE(pq.has_value());
    CHECK(pq->first == -4);
    CHECK(pq->second == 7);
    CHECK(!phi_inverse(-3.0).has_value());
  }

  TEST_CASE("density constants") {
    CHECK(std::abs(t2_cone_area() - 4 * M_PI * M_PI / std::sqrt(3.0)) < 1e-12);
    CHECK(std::abs(t2_cone_density() - M_PI / std::sqrt(3.0)) < 1e-12);
  }

  TEST_CASE("tangent cone of a simple singular point") {
    SingularityReport r;
    r.multiplicity = 1;
    r.type = SingularType::increasing;
    TangentConeCase c = classify_tangent_cone(r);
    CHECK(c.density == doctest::Approx(M_PI / std::sqrt(3.0)));
    r.multiplicity = 2;
    r.type = SingularType::maximum;
    CHECK(classify_tangent_cone(r).tag == ConeCase::plane_union);
    r.type = SingularType::increasing;
    CHECK_THROWS_AS(classify_tangent_cone(r), NumericalError);
  }
}
