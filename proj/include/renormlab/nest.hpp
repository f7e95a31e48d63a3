#pragma once

#include <vector>

#include "renormlab/core.hpp"
#include "renormlab/semigroup.hpp"
#include "renormlab/sequence.hpp"
#include "renormlab/shuffle.hpp"
#include "renormlab/solver.hpp"

namespace renormlab {

struct NestComponent {
  Interval interval;
  int pos = 0;
  int sign = 1;
  int return_time = 0;
  int orbit_time = 0;  // smallest t with x_t in this component
  Word word;           // level-(m-1) positions visited before the return
};

struct NestLevel {
  std::vector<NestComponent> components;  // sorted by position
  const NestComponent& central() const;
  const NestComponent* find(int pos) const;
  // Stores the position of the component containing x; false when none does.
  bool locate(ext x, int& pos) const;
};

// Real principal nest of a superattracting parameter. levels[0] holds the
// three intervals [-beta, alpha), [alpha, -alpha], (-alpha, beta].
struct PrincipalNest {
  ext c = 0;
  int period = 0;
  std::vector<ext> orbit;  // x_0 = 0, ..., x_{p-1}
  ext alpha = 0;
  ext beta = 0;
  std::vector<NestLevel> levels;
  std::vector<int> noncentral_levels;

  int top() const { return static_cast<int>(levels.size()) - 1; }
  const Interval& central(int m) const { return levels.at(static_cast<std::size_t>(m)).central().interval; }
  // Largest m with x in I^m, or -1 outside I^0.
  int depth(ext x) const;
};

constexpr int kDefaultMaxNestLevel = 64;

PrincipalNest build_nest(ext c, int period, int max_level = kDefaultMaxNestLevel);
ReturnTypeSequence return_type_sequence(const PrincipalNest& nest);
CascadeData cascade_data(const PrincipalNest& nest, const std::vector<ext>& postcritical);
std::vector<Cascade> detect_cascades(const PrincipalNest& nest);

// Center, nest and sequence of a shuffle in one call.
struct ShuffleNest {
  CenterSolve center;
  PrincipalNest nest;
  ReturnTypeSequence sequence;
};
ShuffleNest nest_of_shuffle(const Shuffle& sigma, const CenterOptions& opts = {});

int essential_period(const Shuffle& sigma, const CenterOptions& opts = {});
bool essentially_equivalent(const Shuffle& a, const Shuffle& b, const CenterOptions& opts = {});
CompactShuffle compact_coords(const Shuffle& sigma, const CenterOptions& opts = {});

// Root of the copy of the representative truncated inside the given cascade,
// at the middle of that cascade's neglectable run.
RootSolve c_of_end(const ReturnTypeSequence& representative, int cascade_index,
                   const CenterOptions& opts = {});

}  // namespace renormlab
