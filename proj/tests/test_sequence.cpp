#include <algorithm>

#include "doctest.h"
#include "renormlab/errors.hpp"
#include "renormlab/sequence.hpp"

using namespace renormlab;

TEST_CASE("sigma3_n chains have the displayed shape") {
  for (int n = 1; n <= 12; ++n) {
    const ReturnTypeSequence seq = sigma3_sequence(n);
    CHECK_NOTHROW(check_sequence(seq));
    CHECK(seq.top() == n + 1);
    CHECK(seq.levels[0] == gamma0());
    CHECK(seq.levels[static_cast<std::size_t>(n + 1)] == gamma_prime());
    CHECK(seq.chi(1) == chi0());
    for (int m = 2; m <= n; ++m) CHECK(seq.chi(m) == chi_canonical());
    CHECK(seq.chi(n + 1) == chi_prime());
    CHECK(seq.irreducible);
  }
}

TEST_CASE("shuffle of a sequence inverts the construction") {
  for (int n = 1; n <= 12; ++n) {
    const ReturnTypeSequence seq = sigma3_sequence(n);
    CHECK(realize(seq).period() == 3 * n + 2);
    CHECK(kneading_of_sequence(seq) == sigma3_n_kneading(n));
    CHECK(shuffle_of_sequence(seq) == sigma3_n(n));
  }
}

TEST_CASE("saddle-node cascade of sigma3_n") {
  for (int n = 1; n <= 12; ++n) {
    const auto cascades = detect_cascades(sigma3_sequence(n));
    REQUIRE(cascades.size() == 2);
    const Cascade& sn = cascades[0];
    CHECK(sn.kind == CascadeKind::SaddleNode);
    CHECK(sn.length() == n);
    CHECK(static_cast<int>(sn.neglectable.size()) == n - 1);
    CHECK(cascades[1].kind == CascadeKind::UlamNeumann);
    CHECK(cascades[1].length() == 1);
    CHECK(cascades[1].neglectable.empty());
  }
}

TEST_CASE("essential period of sigma3_n is 5") {
  for (int n = 1; n <= 12; ++n) CHECK(essential_period(sigma3_sequence(n)) == 5);
}

TEST_CASE("truncation at every neglectable level gives sigma3") {
  for (int n : {5, 8, 12}) {
    const ReturnTypeSequence seq = sigma3_sequence(n);
    const auto neg = neglectable_levels(detect_cascades(seq));
    REQUIRE(static_cast<int>(neg.size()) == n - 1);
    for (int l : neg) CHECK(truncate(seq, l) == sigma3());
  }
  CHECK_THROWS_AS(truncate(sigma3_sequence(5), 5), NotNeglectable);
  CHECK_THROWS_AS(truncate(sigma3_sequence(5), 6), NotNeglectable);
}

TEST_CASE("insertion climbs the family and truncation undoes it") {
  for (int n = 3; n <= 9; ++n) {
    const ReturnTypeSequence seq = sigma3_sequence(n);
    for (int l = 2; l < n; ++l) {
      const ReturnTypeSequence up = insert_neglectable(seq, l);
      CHECK(up == sigma3_sequence(n + 1));
      CHECK(canonical_form(up) == canonical_form(seq));
      CHECK(truncate(up, l) == truncate(seq, l));
    }
  }
  CHECK_THROWS_AS(insert_neglectable(sigma3_sequence(5), 1), NotInsertable);
  CHECK_THROWS_AS(insert_neglectable(sigma3_sequence(5), 5), NotInsertable);
}

TEST_CASE("canonical form and compact coordinates") {
  const auto base = compact_coords(sigma3_sequence(2));
  for (int n = 2; n <= 12; ++n) {
    const CompactShuffle cs = compact_coords(sigma3_sequence(n));
    CHECK(cs.class_id == base.class_id);
    REQUIRE(cs.coords.size() == 1);
    CHECK(cs.coords[0] == n - 1);
    CHECK_FALSE(cs.is_end());
  }
  CompactShuffle end = base;
  end.coords[0].reset();
  CHECK(end.is_end());
}

TEST_CASE("embed_F is strictly decreasing in each coordinate") {
  CHECK(embed_F({}) == 0.0);
  for (long a = 1; a < 20; ++a) CHECK(embed_F({a + 1}) < embed_F({a}));
  for (long a = 1; a < 6; ++a) {
    for (long b = 1; b < 6; ++b) {
      CHECK(embed_F({a, b + 1}) < embed_F({a, b}));
      CHECK(embed_F({a + 1, b}) < embed_F({a, b}));
    }
  }
  CHECK_THROWS_AS(embed_F({0}), PreconditionViolation);
}

TEST_CASE("Goes Through Twice fixture") {
  const ReturnTypeSequence gt = sandwich_sequence(4, chi2(), 4);
  CHECK_NOTHROW(check_sequence(gt));
  CHECK(is_admissible(gt.chi(6)));
  CHECK(gt.chi(6).image(-1) == Word{-1, -1, 0});
  CHECK(parse_sequence(to_text(gt)) == gt);
  CHECK(realize(gt).period() == 46);

  const auto cascades = detect_cascades(gt);
  REQUIRE_FALSE(cascades.empty());
  CHECK(cascades[0].kind == CascadeKind::SaddleNode);
  CHECK(cascades[0].d == 4);
  const int pe = essential_period(gt);
  CHECK(pe < realize(gt).period());
  CHECK(pe > 5);
}

TEST_CASE("Two Cascades fixture") {
  const ReturnTypeSequence tc = sandwich_sequence(6, chi3(), 6);
  CHECK_NOTHROW(check_sequence(tc));
  CHECK(tc.chi(8).image(0) == Word{-1, 0});
  const auto cascades = detect_cascades(tc);
  int saddle = 0;
  for (const Cascade& c : cascades) {
    if (c.kind != CascadeKind::SaddleNode) continue;
    ++saddle;
    CHECK_FALSE(c.neglectable.empty());
  }
  CHECK(saddle == 2);
  const CompactShuffle cs = compact_coords(tc);
  REQUIRE(cs.coords.size() == 2);
  CHECK(cs.class_id == compact_coords(sandwich_sequence(8, chi3(), 6)).class_id);
  CHECK(cs.class_id != compact_coords(sigma3_sequence(5)).class_id);
  CHECK(compact_coords(sandwich_sequence(8, chi3(), 6)).coords[0] > cs.coords[0]);

  SUBCASE("truncating the upper cascade returns to sigma3") {
    const auto neg = neglectable_levels(cascades);
    CHECK(truncate(tc, neg.front()) == sigma3());
  }
}

TEST_CASE("sigma3_1 has no neglectable level") {
  const ReturnTypeSequence one = sequence_from_homs({chi0(), chi_prime()});
  CHECK(one == sigma3_sequence(1));
  CHECK(neglectable_levels(detect_cascades(one)).empty());
  CHECK(essential_period(one) == realize(one).period());
}

TEST_CASE("structural checks reject broken chains") {
  SUBCASE("top with two generators") {
    const ReturnTypeSequence seq = sequence_from_homs({chi0(), chi_canonical()});
    CHECK_THROWS_AS(check_sequence(seq), AdmissibilityViolation);
  }
  SUBCASE("first map must be zero-admissible") {
    const ReturnTypeSequence seq = sequence_from_homs({chi_canonical(), chi_prime()});
    CHECK_THROWS_AS(check_sequence(seq), AdmissibilityViolation);
  }
}

TEST_CASE("sequence text round trip") {
  for (int n = 1; n <= 6; ++n) {
    const ReturnTypeSequence seq = sigma3_sequence(n);
    CHECK(parse_sequence(to_text(seq)) == seq);
  }
  CHECK(parse_sequence(to_text(sandwich_sequence(6, chi3(), 6))) == sandwich_sequence(6, chi3(), 6));
}

TEST_CASE("reduce keeps only generators reached from the top") {
  const ReturnTypeSequence seq = sigma3_sequence(4);
  CHECK(is_irreducible(seq));
  CHECK(reduce(seq) == seq);
  const auto reach = reachable_positions(seq);
  REQUIRE(reach.size() == seq.levels.size());
  CHECK(reach.back() == std::vector<int>{0});
  CHECK(reach.front() == std::vector<int>{-1, 0, 1});
}
