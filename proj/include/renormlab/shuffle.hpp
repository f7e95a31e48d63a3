#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renormlab/core.hpp"
#include "renormlab/kneading.hpp"

namespace renormlab {

// Permutation induced by the dynamics on a superattracting orbit, labeled left to
// right: perm[i-1] is the label of the image of the i-th point.
struct Shuffle {
  std::vector<int> perm;
  // Set for sigma^(2), which is kept as a shuffle although its orbit is the
  // first step of period doubling.
  bool immediately_renormalizable = false;
  // Block size of a block-wise permuted partition when the permutation is tuned
  // (largest such block); absent for genuine shuffles.
  std::optional<int> tuned_block;

  int period() const { return static_cast<int>(perm.size()); }
  int operator()(int i) const { return perm.at(static_cast<std::size_t>(i - 1)); }
  // Label of the critical point: the orbit point whose image is leftmost.
  int critical_index() const;
  bool operator==(const Shuffle& o) const { return perm == o.perm; }
};

// Full validation: bijection, single cycle, unimodal, not block-renormalizable.
Shuffle validate_shuffle(const std::vector<int>& perm);

// Validation that records block renormalizability instead of rejecting it.
Shuffle validate_unimodal_cycle(const std::vector<int>& perm);

// Largest block size q (1 < q < p, q | p) whose consecutive blocks are permuted.
std::optional<int> renormalizing_block(const std::vector<int>& perm);

Shuffle shuffle_of_center(ext c, int p);

Itinerary kneading_from_perm(const std::vector<int>& perm);
std::vector<int> perm_from_kneading(const Itinerary& k);

Shuffle identity_shuffle();
Shuffle sigma2();
Shuffle sigma3();
Itinerary sigma3_n_kneading(int n);
Shuffle sigma3_n(int n);

Shuffle star_product(const Shuffle& outer, const Shuffle& inner);

std::string to_cycle_notation(const Shuffle& s);
std::vector<int> parse_cycle_notation(const std::string& text);

}  // namespace renormlab
