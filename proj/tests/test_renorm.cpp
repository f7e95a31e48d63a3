#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "renormlab/errors.hpp"
#include "renormlab/renorm.hpp"
#include "renormlab/shuffle.hpp"

using namespace renormlab;

namespace {

Shuffle tower(const std::vector<Shuffle>& parts) {
  Shuffle s = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) s = star_product(*it, s);
  return s;
}

// Shuffle of the first n points of the critical orbit of g, the last point
// returning to the interval of the first.
std::vector<int> orbit_shuffle(const RenormGerm& g, int n) {
  std::vector<ext> x(static_cast<std::size_t>(n));
  ext y = 0;
  for (int k = 0; k < n; ++k) {
    x[static_cast<std::size_t>(k)] = y;
    y = g.eval(y);
  }
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)]; });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) rank[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])] = r + 1;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    perm[static_cast<std::size_t>(rank[static_cast<std::size_t>(k)] - 1)] = rank[static_cast<std::size_t>((k + 1) % n)];
  }
  return perm;
}

// Flattened evaluation: the op list of level k is
// [scale by beta_k, (ops of level k-1) repeated n_k times, unscale].
ext flat_eval(const RenormGerm& g, ext x) {
  struct Op {
    int kind;  // 0 map, 1 multiply, 2 divide
    ext beta;
  };
  std::vector<Op> ops{{0, 0}};
  for (const RenormStage& s : g.stages()) {
    std::vector<Op> next{{1, s.beta}};
    for (int k = 0; k < s.period; ++k) next.insert(next.end(), ops.begin(), ops.end());
    next.push_back({2, s.beta});
    ops.swap(next);
  }
  for (const Op& op : ops) {
    if (op.kind == 0) x = x * x + g.base_c();
    else if (op.kind == 1) x = op.beta * x;
    else x = x / op.beta;
  }
  return x;
}

// Scans every m < n for a symmetric interval [-b, b] bounded by a point of
// period m (on either side of 0) that g^m maps into itself while the first
// m - 1 images of 0 stay outside.
bool has_smaller_renormalization(const RenormGerm& g, int n) {
  for (int m = 2; m < n; ++m) {
    const ext dom = g.domain_half_width();
    const int grid = 4000;
    for (int side : {1, -1}) {
      auto h = [&](ext x) { return g.eval_iter(x, m) - side * x; };
      for (int i = 0; i < grid; ++i) {
        const ext x0 = dom * i / grid, x1 = dom * (i + 1) / grid;
        if (h(x0) * h(x1) > 0) continue;
        ext lo = x0, hi = x1;
        for (int it = 0; it < 80; ++it) {
          const ext mid = (lo + hi) / 2;
          (h(lo) * h(mid) <= 0 ? hi : lo) = mid;
        }
        const ext b = (lo + hi) / 2;
        if (b <= 0) continue;
        bool inside = true;
        for (int j = 0; j <= 400 && inside; ++j) {
          inside = std::fabs(g.eval_iter(-b + 2 * b * j / 400, m)) <= b * (1 + 1e-9L);
        }
        bool apart = true;
        ext y = 0;
        for (int j = 1; j < m && apart; ++j) {
          y = g.eval(y);
          apart = std::fabs(y) > b;
        }
        if (inside && apart) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("detect_renormalizable: spec examples") {
  SUBCASE("basilica") {
    const auto st = detect_renormalizable(RenormGerm(-1.0L));
    REQUIRE(st.has_value());
    CHECK(st->period == 2);
    CHECK(static_cast<double>(st->b) == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-12));
  }
  SUBCASE("main cardioid") { CHECK_FALSE(detect_renormalizable(RenormGerm(-0.5L)).has_value()); }
  SUBCASE("sigma3_n centers") {
    for (int n : {1, 3, 5, 8}) {
      const auto st = detect_renormalizable(RenormGerm(center_of_shuffle(sigma3_n(n)).c));
      REQUIRE(st.has_value());
      CHECK(st->period == 3 * n + 2);
    }
  }
  CHECK_THROWS_AS(detect_renormalizable(RenormGerm(-1.0L), 65), PreconditionViolation);
}

TEST_CASE("the renormalization interval is periodic up to its boundary") {
  for (const Shuffle& s : {sigma3_n(2), star_product(sigma3(), sigma2()), sigma3()}) {
    const RenormGerm g(center_of_shuffle(s).c);
    const auto st = detect_renormalizable(g);
    REQUIRE(st.has_value());
    for (ext x : {-st->b, st->b}) {
      const ext y = g.eval_iter(x, st->period);
      CHECK(std::fabs(std::fabs(y) - st->b) <= 1e-9L * 2 * st->b);
    }
  }
}

TEST_CASE("the detected period is minimal") {
  const std::vector<Shuffle> fixtures{sigma3(), sigma3_n(1), sigma3_n(2), sigma3_n(3), sigma3_n(4),
                                      star_product(sigma3(), sigma2()), star_product(sigma2(), sigma3()),
                                      star_product(sigma3_n(1), sigma2())};
  for (const Shuffle& s : fixtures) {
    const RenormGerm g(center_of_shuffle(s).c);
    const auto st = detect_renormalizable(g);
    REQUIRE(st.has_value());
    CHECK_FALSE(has_smaller_renormalization(g, st->period));
  }
  const RenormGerm tuned(center_of_shuffle(star_product(sigma3(), sigma2())).c);
  CHECK(has_smaller_renormalization(tuned, 6));
}

TEST_CASE("stage evaluation matches the flattened composition") {
  const std::vector<std::vector<Shuffle>> towers{{sigma3(), sigma2(), sigma2()},
                                                 {sigma2(), sigma2(), sigma2()},
                                                 {sigma3_n(1), sigma3()}};
  for (const auto& parts : towers) {
    const Shuffle s = tower(parts);
    RenormGerm g(center_of_shuffle(s).c);
    long product = 1;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      g = renormalize(g);
      product *= g.stages().back().period;
    }
    CHECK(g.total_period() == product);
    CHECK(product * parts.back().period() == s.period());
    for (int i = 0; i <= 200; ++i) {
      const ext x = -1 + 2.0L * i / 200;
      const ext a = g.eval(x), b = flat_eval(g, x);
      const ext scale = std::max<ext>(std::fabs(a), 0.5L);
      const ext ulp = std::nextafter(scale, static_cast<ext>(2)) - scale;
      CHECK(std::fabs(a - b) <= 4 * ulp);
    }
  }
}

TEST_CASE("each stage reads the next tuning factor") {
  const std::vector<std::vector<Shuffle>> towers{{sigma3(), sigma2()},
                                                 {sigma2(), sigma3()},
                                                 {sigma3(), sigma2(), sigma2()},
                                                 {sigma3_n(1), sigma2()},
                                                 {sigma3_n(1), sigma3()}};
  for (const auto& parts : towers) {
    RenormGerm g(center_of_shuffle(tower(parts)).c);
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      const auto st = detect_renormalizable(g);
      REQUIRE(st.has_value());
      CHECK(st->period == parts[i].period());
      CHECK(orbit_shuffle(g, st->period) == parts[i].perm);
      g = g.with_stage(*st);
    }
    CHECK(orbit_shuffle(g, parts.back().period()) == parts.back().perm);
  }
}

TEST_CASE("renormalize") {
  const RenormGerm g = renormalize(RenormGerm(-1.0L));
  CHECK(g.level() == 1);
  CHECK(g.eval(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(static_cast<double>(g.eval(0))) < 1.0);
  CHECK_THROWS_AS(renormalize(RenormGerm(-0.5L)), NotRenormalizable);
}

TEST_CASE("renorm_orbit along the doubling tower") {
  const ext c = center_of_shuffle(tower({sigma2(), sigma2(), sigma2()})).c;
  const auto rows = renorm_orbit(c, 3);
  REQUIRE(rows.size() == 3);
  const ext expected[] = {center_of_shuffle(star_product(sigma2(), sigma2())).c, -1.0L, 0.0L};
  for (int i = 0; i < 3; ++i) {
    CHECK(rows[static_cast<std::size_t>(i)].stage == i + 1);
    CHECK(rows[static_cast<std::size_t>(i)].period == 2);
    const Interval b = rows[static_cast<std::size_t>(i)].inner.bracket;
    CHECK(std::fabs(static_cast<double>(b.mid() - expected[i])) < 1e-9);
  }
  CHECK(renorm_orbit(c, 0).empty());

  const auto tuned = renorm_orbit(center_of_shuffle(star_product(sigma3(), sigma2())).c, 1);
  REQUIRE(tuned.size() == 1);
  CHECK(tuned[0].period == 3);
  CHECK(tuned[0].inner.bracket.contains(-1.0L));
}

TEST_CASE("first return to A for the basilica") {
  const RenormGerm g(-1.0L);
  const ext a = -real_fixed_points(-1.0L).alpha;
  const PiecewiseMap fr = first_return_map(g, {-a, a});
  const MapBranch* central = fr.branch_at(0);
  REQUIRE(central != nullptr);
  CHECK(central->time == 2);
  CHECK(central->sign == 0);
  CHECK(central->itinerary == itinerary_from_string("CL"));
  CHECK(static_cast<double>(central->domain.width()) > 0.99 * static_cast<double>(2 * a));
  for (const MapBranch& b : fr.branches) {
    if (&b == central) continue;
    CHECK(b.time == 1);
    CHECK_FALSE(b.domain.contains_open(0));
  }
}

TEST_CASE("first through map of a domain already in the target is one step of g") {
  const RenormGerm g(-1.0L);
  const PiecewiseMap t = first_through_map(g, {0.2L, 0.3L}, {{0.0L, 0.5L}});
  REQUIRE(t.branches.size() == 1);
  CHECK(t.branches[0].time == 1);
  CHECK(t.branches[0].sign == 1);
  CHECK(static_cast<double>(t.branches[0].domain.lo) == doctest::Approx(0.2));
  CHECK(static_cast<double>(t.branches[0].domain.hi) == doctest::Approx(0.3));
}

TEST_CASE("per3 experiment") {
  SUBCASE("acceptance tuning passes") {
    const Per3Report r = run_per3({{8, 10, 12}, 3, 0.02});
    CHECK(r.verdict == Per3Verdict::Pass);
    CHECK(r.period == 26L * 32 * 38);
    REQUIRE(r.rows.size() == 3);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      CHECK(std::fabs(r.rows[i].midpoint + 1.75L) < std::fabs(r.rows[i - 1].midpoint + 1.75L));
      CHECK(r.rows[i].agreement >= r.rows[i - 1].agreement);
    }
    CHECK(std::fabs(static_cast<double>(r.rows.back().midpoint) + 1.75) <= 0.02);
    CHECK(static_cast<double>(r.c) == doctest::Approx(-1.74731112431010504).epsilon(1e-14));
    CHECK(r.rows[1].period == 26);
    CHECK(r.rows[2].period == 32);
  }
  SUBCASE("zero stages is a trivial pass") {
    const Per3Report r = run_per3({{8, 10, 12}, 0, 0.02});
    CHECK(r.verdict == Per3Verdict::Pass);
    CHECK(r.rows.empty());
  }
  SUBCASE("fixed small n gives no verdict") {
    const Per3Report r = run_per3({{1, 1, 1}, 3, 0.02});
    CHECK(r.verdict == Per3Verdict::NoVerdict);
    CHECK(r.rows.size() == 3);
  }
  SUBCASE("a tight tolerance fails") {
    CHECK(run_per3({{8, 10, 12}, 3, 1e-4}).verdict == Per3Verdict::Fail);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(run_per3({{8, 10}, 3, 0.02}), PreconditionViolation);
    CHECK_THROWS_AS(run_per3({{0, 10}, 2, 0.02}), PreconditionViolation);
    CHECK_THROWS_AS(run_per3({{30, 40}, 2, 0.02}), PreconditionViolation);
  }
  CHECK(to_string(Per3Verdict::Inconclusive) == "INCONCLUSIVE");
  CHECK(to_string(Per3Verdict::NoVerdict) == "NO_VERDICT");
}
