#include <algorithm>
#include <numeric>

#include "brute_shuffle.hpp"
#include "doctest.h"
#include "renormlab/errors.hpp"
#include "renormlab/shuffle.hpp"
#include "renormlab/solver.hpp"

using namespace renormlab;

namespace {

using brute::Verdict;
using brute::brute_force;

Verdict library_verdict(const std::vector<int>& perm) {
  try {
    validate_shuffle(perm);
    return Verdict::Valid;
  } catch (const NotACycle&) {
    return Verdict::Cycle;
  } catch (const NotUnimodal&) {
    return Verdict::Unimodal;
  } catch (const Renormalizable&) {
    return Verdict::Blocks;
  }
}

}  // namespace

TEST_CASE("validate_shuffle: named permutations") {
  const Shuffle s2 = validate_shuffle({2, 1});
  CHECK(s2.immediately_renormalizable);
  CHECK(s2 == sigma2());
  CHECK(validate_shuffle({3, 1, 2}) == sigma3());
  CHECK_FALSE(sigma3().immediately_renormalizable);
  CHECK(sigma3().critical_index() == 2);
}

TEST_CASE("validate_shuffle: failures name the violated invariant") {
  CHECK_THROWS_AS(validate_shuffle({3, 4, 1, 2}), NotACycle);
  CHECK_THROWS_AS(validate_shuffle({1, 3, 2}), NotACycle);
  CHECK_THROWS_AS(validate_shuffle({2, 3, 1}), NotUnimodal);
  CHECK_THROWS_AS(validate_shuffle({1, 1}), NotABijection);
  CHECK_THROWS_AS(validate_shuffle({0, 2}), NotABijection);
  CHECK_THROWS_AS(validate_shuffle({1}), PreconditionViolation);
  try {
    validate_shuffle({4, 3, 1, 2});
    FAIL("expected Renormalizable");
  } catch (const Renormalizable& e) {
    CHECK(e.block_size == 2);
    CHECK(e.blocks == 2);
  }
}

TEST_CASE("validate_shuffle agrees with a brute-force checker for every p <= 8") {
  long disagreements = 0, valid = 0;
  for (int p = 2; p <= 8; ++p) {
    std::vector<int> perm(static_cast<std::size_t>(p));
    std::iota(perm.begin(), perm.end(), 1);
    do {
      const Verdict lib = library_verdict(perm), ref = brute_force(perm);
      if (lib != ref) ++disagreements;
      if (ref == Verdict::Valid) {
        ++valid;
        const int k = validate_shuffle(perm).critical_index();
        CHECK(perm[static_cast<std::size_t>(k - 1)] == 1);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  CHECK(disagreements == 0);
  CHECK(valid > 0);
}

TEST_CASE("sigma3_n fixtures") {
  CHECK(sigma3_n(1).perm == std::vector<int>{5, 4, 2, 1, 3});
  CHECK(sigma3_n(2).perm == std::vector<int>{8, 7, 6, 3, 2, 1, 4, 5});
  CHECK(sigma3_n(3).perm == std::vector<int>{11, 10, 9, 8, 4, 3, 2, 1, 5, 6, 7});
  for (int n = 1; n <= 12; ++n) {
    const Shuffle s = sigma3_n(n);
    CHECK(s.period() == 3 * n + 2);
    CHECK_FALSE(s.tuned_block.has_value());
    CHECK(kneading_from_perm(s.perm) == sigma3_n_kneading(n));
  }
  CHECK_THROWS_AS(sigma3_n(0), PreconditionViolation);
}

TEST_CASE("kneading and permutation are inverse") {
  for (int p = 2; p <= 7; ++p) {
    std::vector<int> perm(static_cast<std::size_t>(p));
    std::iota(perm.begin(), perm.end(), 1);
    do {
      if (brute_force(perm) != Verdict::Valid) continue;
      CHECK(perm_from_kneading(kneading_from_perm(perm)) == perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("shuffle_of_center: spec examples") {
  CHECK(shuffle_of_center(-1.0L, 2) == sigma2());
  const CenterSolve s3 = center_of_shuffle(sigma3());
  CHECK(static_cast<double>(s3.c) == doctest::Approx(-1.754877666246693).epsilon(1e-14));
  CHECK(shuffle_of_center(s3.c, 3) == sigma3());
  CHECK_THROWS_AS(shuffle_of_center(0.0L, 2), NotSuperattracting);
}

TEST_CASE("shuffle_of_center is stable under one more Newton step") {
  for (int n = 1; n <= 12; ++n) {
    const Shuffle s = sigma3_n(n);
    const ext c = center_of_shuffle(s).c;
    ext z = 0, dz = 0;
    for (int k = 0; k < s.period(); ++k) {
      dz = 2 * z * dz + 1;
      z = z * z + c;
    }
    const ext refined = c - z / dz;
    CHECK(shuffle_of_center(refined, s.period()) == s);
  }
}

TEST_CASE("star_product") {
  const Shuffle s22 = star_product(sigma2(), sigma2());
  CHECK(s22.perm == std::vector<int>{4, 3, 1, 2});
  CHECK(s22.tuned_block == 2);
  CHECK(star_product(sigma3(), sigma2()).perm == std::vector<int>{6, 5, 1, 2, 3, 4});
  CHECK(star_product(sigma2(), sigma3()).perm == std::vector<int>{6, 5, 4, 2, 1, 3});
  CHECK(star_product(star_product(sigma2(), sigma2()), sigma2()).perm ==
        std::vector<int>{8, 7, 6, 5, 2, 1, 3, 4});

  SUBCASE("identity is neutral") {
    CHECK(star_product(sigma3(), identity_shuffle()) == sigma3());
    CHECK(star_product(identity_shuffle(), sigma3_n(2)) == sigma3_n(2));
  }
  SUBCASE("periods multiply") {
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        CHECK(star_product(sigma3_n(a), sigma3_n(b)).period() == (3 * a + 2) * (3 * b + 2));
      }
    }
  }
  SUBCASE("the tuned center realizes the product") {
    const CenterSolve c = center_of_shuffle(s22);
    CHECK(static_cast<double>(c.c) == doctest::Approx(-1.310702641336833).epsilon(1e-13));
    CHECK(shuffle_of_center(c.c, 4) == s22);
  }
}

TEST_CASE("cycle notation round trip") {
  for (int n = 1; n <= 6; ++n) {
    const Shuffle s = sigma3_n(n);
    CHECK(parse_cycle_notation(to_cycle_notation(s)) == s.perm);
  }
  CHECK(to_cycle_notation(sigma3()) == "(1 3 2)");
  CHECK(parse_cycle_notation("  (1 3 2)  # comment") == std::vector<int>{3, 1, 2});
  CHECK_THROWS_AS(parse_cycle_notation("1 3 2"), ParseError);
}
