#include "renormlab/germ.hpp"

#include <cmath>

#include "renormlab/errors.hpp"

namespace renormlab {

RenormGerm::RenormGerm(ext base_c) : c_(base_c) {
  if (!std::isfinite(static_cast<double>(base_c))) throw PreconditionViolation("non-finite c");
}

RenormGerm RenormGerm::with_stage(const RenormStage& s) const {
  if (s.period < 2 || !(s.b > 0) || std::fabs(s.beta) != s.b) {
    throw PreconditionViolation("malformed renormalization stage");
  }
  RenormGerm g = *this;
  g.stages_.push_back(s);
  return g;
}

ext RenormGerm::eval_level(int level, ext x) const {
  if (level == 0) return x * x + c_;
  const RenormStage& s = stages_[static_cast<std::size_t>(level - 1)];
  ext y = s.beta * x;
  for (int k = 0; k < s.period; ++k) y = eval_level(level - 1, y);
  return y / s.beta;
}

std::pair<ext, ext> RenormGerm::eval_d_level(int level, ext x) const {
  if (level == 0) return {x * x + c_, 2 * x};
  const RenormStage& s = stages_[static_cast<std::size_t>(level - 1)];
  ext y = s.beta * x;
  ext d = 1;
  for (int k = 0; k < s.period; ++k) {
    const auto [v, dv] = eval_d_level(level - 1, y);
    d *= dv;
    y = v;
  }
  return {y / s.beta, d};
}

ext RenormGerm::eval_iter(ext x, int n) const {
  for (int k = 0; k < n; ++k) x = eval(x);
  return x;
}

std::pair<ext, ext> RenormGerm::eval_iter_d(ext x, int n) const {
  ext d = 1;
  for (int k = 0; k < n; ++k) {
    const auto [v, dv] = eval_d(x);
    d *= dv;
    x = v;
  }
  return {x, d};
}

ext RenormGerm::domain_half_width() const {
  if (!stages_.empty()) return 1;
  return real_fixed_points(c_).beta;
}

long RenormGerm::total_period() const {
  long p = 1;
  for (const auto& s : stages_) p *= s.period;
  return p;
}

ext RenormGerm::base_half_width() const {
  ext w = stages_.empty() ? real_fixed_points(c_).beta : 1;
  for (const auto& s : stages_) w *= s.b;
  return w;
}

RenormGerm::CriticalItinerary RenormGerm::critical_itinerary(int depth, ext c_tol) const {
  CriticalItinerary out;
  ext x = 0;
  for (int k = 0; k < depth; ++k) {
    x = eval(x);
    if (std::fabs(x) <= c_tol) {
      out.symbols.push_back(Sym::C);
      out.undefined = true;
      break;
    }
    out.symbols.push_back(side_of(x));
  }
  return out;
}

}  // namespace renormlab
