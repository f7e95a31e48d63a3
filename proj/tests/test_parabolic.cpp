#include <cmath>

#include "doctest.h"
#include "renormlab/errors.hpp"
#include "renormlab/parabolic.hpp"

using namespace renormlab;

namespace {

double dist(xcplx a, xcplx b) { return static_cast<double>(std::abs(a - b)); }

xcplx step(const ParabolicChart& ch, xcplx z) { return ch.xi + ch.map.forward(z - ch.xi); }

}  // namespace

TEST_CASE("detect_parabolic at c = 1/4") {
  const ParabolicChart ch = detect_parabolic(0.25, 1);
  CHECK(dist(ch.xi, 0.5L) < 1e-15);
  CHECK(dist(ch.a, 1.0L) < 1e-15);
  CHECK(dist(ch.b, 0.0L) < 1e-15);
  CHECK(dist(ch.B, 1.0L) < 1e-15);
  CHECK(dist(ch.multiplier, 1.0L) < 1e-15);
  CHECK(dist(ch.u_in, -1.0L) < 1e-15);
  CHECK(ch.petal_radius > 0);
}

TEST_CASE("detect_parabolic at c = -1.75, q = 3") {
  const ParabolicChart ch = detect_parabolic(-1.75, 3);
  CHECK(dist(ch.multiplier, 1.0L) <= 1e-8);
  CHECK(ch.cycle.size() == 3);
  CHECK(dist(ch.xi, -0.0549581320873711914222L) < 1e-15);
  CHECK(dist(ch.a, -8.9188867535981454949L) < 1e-11);
  CHECK(dist(ch.b, -3.2467975887146313008L) < 1e-9);
  CHECK(dist(ch.B, 1.0408163265306122449L) < 1e-10);
  CHECK(dist(ch.u_in, 1.0L) < 1e-15);
  CHECK(dist(ch.anchor(PetalSide::Incoming), ch.xi + 1.0L / (2 * std::abs(ch.a))) < 1e-15);
}

TEST_CASE("non-parabolic and degenerate inputs") {
  CHECK_THROWS_AS(detect_parabolic(-0.75, 1), NotParabolic);
  CHECK_THROWS_AS(detect_parabolic(-0.75, 2), DegenerateParabolic);
  CHECK_THROWS_AS(detect_parabolic(0.1, 1), NotParabolic);
}

TEST_CASE("nearest parabolic parameter") {
  CHECK(std::abs(nearest_parabolic_parameter(0.2501, 1) - cplx(0.25)) < 1e-10);
  CHECK(nearest_parabolic_parameter(0.2501, 1).imag() == 0.0);
  CHECK(std::abs(nearest_parabolic_parameter(-1.7499, 3) - cplx(-1.75)) < 1e-10);
}

TEST_CASE("Fatou coordinates satisfy the functional equation on the petal grid") {
  for (auto [c, q] : {std::pair{0.25, 1}, std::pair{-1.75, 3}}) {
    const ParabolicChart ch = detect_parabolic(c, q);
    for (PetalSide side : {PetalSide::Incoming, PetalSide::Outgoing}) {
      const FatouCoordinate fc(ch, side);
      CHECK(std::abs(fc.eval(fc.anchor())) < 1e-14L);
      const auto grid = fatou_residual_grid(fc, 20);
      CHECK(grid.size() == 400);
      double worst = 0;
      for (const FatouSample& s : grid) {
        CHECK(ch.in_petal(to_xcplx(s.z), side));
        worst = std::max(worst, s.residual);
      }
      CHECK(worst <= 1e-8);
    }
  }
}

TEST_CASE("incoming Fatou coordinate of the critical point at -1.75") {
  const ParabolicChart ch = detect_parabolic(-1.75, 3);
  const FatouCoordinate in(ch, PetalSide::Incoming);
  const xcplx phi0 = in.eval(0);
  CHECK(static_cast<double>(phi0.real()) == doctest::Approx(-0.00114315209921).epsilon(1e-8));
  CHECK(std::fabs(static_cast<double>(phi0.imag())) < 1e-15);
  const cplx proj = cylinder_project(in, 0);
  CHECK(proj.real() == doctest::Approx(1 - 0.00114315209921).epsilon(1e-10));
}

TEST_CASE("the incoming range contains a right half-plane") {
  const ParabolicChart ch = detect_parabolic(-1.75, 3);
  const FatouCoordinate in(ch, PetalSide::Incoming);
  double prev = -1e300;
  for (ext s : {0.5L, 0.125L, 1.0L / 32, 1.0L / 128, 1.0L / 512}) {
    const double re = static_cast<double>(in.eval(ch.xi + s * ch.petal_radius * ch.u_in).real());
    CHECK(re > prev);
    prev = re;
  }
  CHECK(prev > 100);
}

TEST_CASE("outgoing inverse") {
  for (auto [c, q] : {std::pair{0.25, 1}, std::pair{-1.75, 3}}) {
    const ParabolicChart ch = detect_parabolic(c, q);
    const FatouCoordinate out(ch, PetalSide::Outgoing);
    for (xcplx w : {xcplx(0.3L, 0.2L), xcplx(-2.0L, -0.5L), xcplx(1.5L, 0.0L)}) {
      CHECK(std::abs(out.eval(out.inverse(w)) - w) < 1e-10L);
    }
  }
}

TEST_CASE("changing the anchor shifts Phi by a constant") {
  const ParabolicChart ch = detect_parabolic(-1.75, 3);
  const FatouCoordinate base(ch, PetalSide::Incoming);
  const xcplx other_anchor = ch.xi + ch.u_in * static_cast<ext>(0.7 * ch.petal_radius) + xcplx(0, 0.002L);
  const FatouCoordinate moved(ch, PetalSide::Incoming, other_anchor);
  const auto grid = fatou_residual_grid(base, 20);
  const xcplx shift = base.eval(to_xcplx(grid.front().z)) - moved.eval(to_xcplx(grid.front().z));
  CHECK(std::abs(shift - base.eval(other_anchor)) < 1e-10L);
  double worst = 0;
  for (const FatouSample& s : grid) {
    const xcplx z = to_xcplx(s.z);
    worst = std::max(worst, dist(base.eval(z) - moved.eval(z), shift));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("Phi_+ is injective on the petal grid") {
  const ParabolicChart ch = detect_parabolic(0.25, 1);
  const auto grid = fatou_residual_grid(FatouCoordinate(ch, PetalSide::Incoming), 20);
  double min_ratio = 1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double dz = std::abs(grid[i].z - grid[j].z);
      const double dphi = std::abs(grid[i].phi - grid[j].phi);
      min_ratio = std::min(min_ratio, dphi / dz);
    }
  }
  CHECK(min_ratio > 0.1);
}

TEST_CASE("the petal shrinks to the parabolic point") {
  for (auto [c, q] : {std::pair{0.25, 1}, std::pair{-1.75, 3}}) {
    const ParabolicChart ch = detect_parabolic(c, q);
    const auto grid = fatou_residual_grid(FatouCoordinate(ch, PetalSide::Incoming), 4);
    for (const FatouSample& s : grid) {
      xcplx z = to_xcplx(s.z);
      long n = 0;
      while (dist(z, ch.xi) >= 1e-6 && n < 5000000) {
        z = step(ch, z);
        ++n;
      }
      CHECK(dist(z, ch.xi) < 1e-6);
    }
  }
}

TEST_CASE("cylinder projection") {
  const ParabolicChart ch = detect_parabolic(-1.75, 3);
  const FatouCoordinate in(ch, PetalSide::Incoming);
  for (cplx z : {cplx(0.0), to_cplx(step(ch, 0)), cplx(0.01, 0.005), cplx(-0.005, -0.002)}) {
    const cplx p0 = cylinder_project(in, z);
    CHECK(p0.real() >= 0);
    CHECK(p0.real() < 1);
    const cplx fz = to_cplx(step(ch, to_xcplx(z)));
    const cplx p1 = cylinder_project(in, fz);
    const double dre = std::remainder(p1.real() - p0.real(), 1.0);
    CHECK(std::fabs(dre) < 1e-9);
    CHECK(std::fabs(p1.imag() - p0.imag()) < 1e-9);
  }
  CHECK_THROWS_AS(cylinder_project(in, cplx(3.0, 0.0)), NotInBasin);
}

TEST_CASE("polynomial roots") {
  const auto roots = polynomial_roots({-6.0L, 11.0L, -6.0L, 1.0L});
  REQUIRE(roots.size() == 3);
  for (ext r : {1.0L, 2.0L, 3.0L}) {
    bool found = false;
    for (xcplx z : roots) found = found || std::abs(z - r) < 1e-12L;
    CHECK(found);
  }
}
