#include <cmath>
#include <random>

#include "doctest.h"
#include "renormlab/core.hpp"
#include "renormlab/errors.hpp"

using namespace renormlab;

TEST_CASE("iterate: fixed critical point") {
  const Orbit o = iterate(0.0, 0.0, 5);
  CHECK(o.points.size() == 6);
  for (cplx z : o.points) CHECK(z == cplx(0));
  CHECK_FALSE(o.escaped);
  CHECK_FALSE(o.escape_index.has_value());
}

TEST_CASE("iterate: c = -2 lands on the beta fixed point") {
  const Orbit o = iterate(-2.0, 0.0, 3, 2.5);
  REQUIRE(o.points.size() == 4);
  CHECK(o.points[0] == cplx(0));
  CHECK(o.points[1] == cplx(-2));
  CHECK(o.points[2] == cplx(2));
  CHECK(o.points[3] == cplx(2));
  CHECK_FALSE(o.escaped);
}

TEST_CASE("iterate: c = 1 escapes quickly") {
  const Orbit o = iterate(1.0, 0.0, 20, 2.0);
  CHECK(o.escaped);
  REQUIRE(o.escape_index.has_value());
  CHECK(*o.escape_index <= 5);
  CHECK(o.points.size() == *o.escape_index + 1);
}

TEST_CASE("iterate: radius below 2 is rejected") {
  CHECK_THROWS_AS(iterate(0.0, 0.0, 3, 1.5), PreconditionViolation);
}

TEST_CASE("iterate: stored points reproduce bit for bit") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const cplx c(u(rng), u(rng));
    const Orbit o = iterate(c, cplx(u(rng), u(rng)), 40, 4.0);
    for (std::size_t k = 1; k < o.points.size(); ++k) {
      CHECK(o.points[k] == o.points[k - 1] * o.points[k - 1] + c);
    }
  }
}

TEST_CASE("fixed_points: spec values") {
  SUBCASE("c = 0") {
    const auto fp = fixed_points(0.0);
    CHECK(std::abs(fp.alpha) < 1e-15);
    CHECK(std::abs(fp.beta - 1.0) < 1e-15);
    CHECK(std::abs(fp.lambda_alpha) < 1e-15);
    CHECK(std::abs(fp.lambda_beta - 2.0) < 1e-15);
  }
  SUBCASE("c = 1/4 is the double fixed point") {
    const auto fp = fixed_points(0.25);
    CHECK(std::abs(fp.alpha - 0.5) < 1e-12);
    CHECK(std::abs(fp.beta - 0.5) < 1e-12);
  }
  SUBCASE("c = -1.75") {
    const auto fp = fixed_points(-1.75);
    CHECK(fp.beta.real() == doctest::Approx((1 + std::sqrt(8.0)) / 2).epsilon(1e-14));
    CHECK(fp.alpha.real() == doctest::Approx((1 - std::sqrt(8.0)) / 2).epsilon(1e-14));
    CHECK(fp.beta.real() == doctest::Approx(1.914214).epsilon(1e-6));
  }
}

TEST_CASE("fixed_points: residual bound and conjugate symmetry") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const cplx c(u(rng), u(rng));
    const auto fp = fixed_points(c);
    for (cplx z : {fp.alpha, fp.beta}) {
      CHECK(std::abs(z * z + c - z) <= 1e-12 * (1 + std::norm(z)));
    }
    CHECK(std::abs(fp.lambda_alpha - 2.0 * fp.alpha) < 1e-14);
    CHECK(std::abs(fp.lambda_beta) >= std::abs(fp.lambda_alpha));
    const auto fc = fixed_points(std::conj(c));
    CHECK(std::abs(fc.alpha - std::conj(fp.alpha)) < 1e-14);
    CHECK(std::abs(fc.beta - std::conj(fp.beta)) < 1e-14);
  }
}

TEST_CASE("periodic_orbit: spec examples") {
  SUBCASE("superattracting fixed point") {
    const auto po = periodic_orbit(0.0, 1, 0.1);
    REQUIRE(po.points.size() == 1);
    CHECK(std::abs(po.points[0]) < 1e-12);
    CHECK(std::abs(po.multiplier) < 1e-12);
  }
  SUBCASE("basilica 2-cycle") {
    const auto po = periodic_orbit(-1.0, 2, -1.1);
    REQUIRE(po.points.size() == 2);
    bool has0 = false, hasm1 = false;
    for (cplx z : po.points) {
      has0 = has0 || std::abs(z) < 1e-12;
      hasm1 = hasm1 || std::abs(z + 1.0) < 1e-12;
    }
    CHECK(has0);
    CHECK(hasm1);
    CHECK(std::abs(po.multiplier) < 1e-12);
  }
  SUBCASE("parabolic 3-cycle at -1.75") {
    const auto po = periodic_orbit(-1.75, 3, 0.3);
    REQUIRE(po.points.size() == 3);
    CHECK(std::abs(po.multiplier - 1.0) <= 1e-8);
  }
}

TEST_CASE("real_intervals: spec examples") {
  SUBCASE("c = 0") {
    const auto ri = real_intervals(0.0);
    CHECK(ri.B.lo == doctest::Approx(-1.0));
    CHECK(ri.B.hi == doctest::Approx(1.0));
    CHECK(std::abs(static_cast<double>(ri.A.width())) < 1e-15);
  }
  SUBCASE("c = -2") {
    const auto ri = real_intervals(-2.0);
    CHECK(ri.B.lo == doctest::Approx(-2.0));
    CHECK(ri.B.hi == doctest::Approx(2.0));
  }
  SUBCASE("c = -1.75") {
    const auto ri = real_intervals(-1.75);
    CHECK(static_cast<double>(ri.B.hi) == doctest::Approx(1.914214).epsilon(1e-6));
    CHECK(static_cast<double>(ri.A.hi) == doctest::Approx(0.914214).epsilon(1e-6));
    CHECK(ri.A.lo == -ri.A.hi);
  }
  CHECK_THROWS_AS(real_intervals(cplx(0.0, 0.1)), OutOfFamily);
}

TEST_CASE("real_intervals: B is forward invariant on [-2, 1/4]") {
  for (int i = 0; i <= 40; ++i) {
    const double c = -2.0 + 2.25 * i / 40;
    const auto ri = real_intervals(c);
    const ext slack = 1e-12L;
    for (int k = 0; k <= 1000; ++k) {
      const ext x = ri.B.lo + ri.B.width() * k / 1000;
      const ext y = quad(static_cast<ext>(c), x);
      CHECK(y >= ri.B.lo - slack);
      CHECK(y <= ri.B.hi + slack);
    }
  }
}

TEST_CASE("iterate_jet matches finite differences") {
  const cplx c(-0.4, 0.3), z(0.2, -0.1);
  const Jet2 j = iterate_jet(c, z, 4);
  auto f4 = [&](cplx w) {
    for (int k = 0; k < 4; ++k) w = w * w + c;
    return w;
  };
  const double h = 1e-5;
  CHECK(std::abs(j.value - f4(z)) < 1e-15);
  CHECK(std::abs(j.d1 - (f4(z + h) - f4(z - h)) / (2 * h)) < 1e-8);
  CHECK(std::abs(j.d2 - (f4(z + h) - 2.0 * f4(z) + f4(z - h)) / (h * h)) < 1e-3);
}
