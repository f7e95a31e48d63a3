#pragma once

#include <utility>
#include <vector>

#include "renormlab/core.hpp"
#include "renormlab/kneading.hpp"

namespace renormlab {

// One renormalization step: the germ G_k(x) = G_{k-1}^period(beta * x) / beta with
// J = [-b, b] in the coordinates of G_{k-1} and beta = +b (minimum type) or -b
// (maximum type), so that G_k is again even, has a minimum at 0 and fixes 1.
struct RenormStage {
  int period = 0;
  ext b = 0;
  ext beta = 0;
  Interval J() const { return {-b, b}; }
};

class RenormGerm {
 public:
  explicit RenormGerm(ext base_c);

  ext base_c() const { return c_; }
  const std::vector<RenormStage>& stages() const { return stages_; }
  int level() const { return static_cast<int>(stages_.size()); }
  RenormGerm with_stage(const RenormStage& s) const;

  ext eval(ext x) const { return eval_level(level(), x); }
  // Value and derivative.
  std::pair<ext, ext> eval_d(ext x) const { return eval_d_level(level(), x); }
  ext eval_iter(ext x, int n) const;
  std::pair<ext, ext> eval_iter_d(ext x, int n) const;

  // Half-width of the invariant interval of the current germ: beta(f_c) at level 0, 1 after.
  ext domain_half_width() const;
  // Product of the stage periods.
  long total_period() const;
  // Half-width of the current domain in the coordinates of f_c.
  ext base_half_width() const;

  // Symbols of G^k(0), k = 1..depth; stops after the first C (|G^k(0)| <= c_tol).
  struct CriticalItinerary {
    Itinerary symbols;
    bool undefined = false;
  };
  CriticalItinerary critical_itinerary(int depth, ext c_tol = 1e-9L) const;

 private:
  ext eval_level(int level, ext x) const;
  std::pair<ext, ext> eval_d_level(int level, ext x) const;

  ext c_;
  std::vector<RenormStage> stages_;
};

}  // namespace renormlab
