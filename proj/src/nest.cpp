#include "renormlab/nest.hpp"

#include <algorithm>
#include <cmath>

#include "renormlab/errors.hpp"

namespace renormlab {

const NestComponent& NestLevel::central() const {
  const NestComponent* c = find(0);
  if (!c) throw PreconditionViolation("nest level without a central component");
  return *c;
}

const NestComponent* NestLevel::find(int pos) const {
  for (const auto& comp : components) {
    if (comp.pos == pos) return &comp;
  }
  return nullptr;
}

bool NestLevel::locate(ext x, int& pos) const {
  for (const auto& comp : components) {
    if (comp.interval.contains(x)) {
      pos = comp.pos;
      return true;
    }
  }
  return false;
}

int PrincipalNest::depth(ext x) const {
  int m = 0;
  while (m <= top() && central(m).contains(x)) ++m;
  return m - 1;
}

namespace {

// Component of f^{-1}(target) containing y.
Interval pull_back(ext c, const Interval& target, ext y) {
  const ext hi = std::sqrt(std::max<ext>(0, target.hi - c));
  if (y == 0) return {-hi, hi};
  const ext lo = std::sqrt(std::max<ext>(0, target.lo - c));
  if (y > 0) return {lo, hi};
  return {-hi, -lo};
}

int orbit_sign(ext x) { return x < 0 ? -1 : 1; }

void assign_positions(std::vector<NestComponent>& comps) {
  const auto central =
      std::find_if(comps.begin(), comps.end(), [](const NestComponent& c) { return c.orbit_time == 0; });
  if (central == comps.end()) throw AdmissibilityViolation("nest level lost the critical point");
  const Interval ci = central->interval;
  std::vector<NestComponent*> left, right;
  for (auto& comp : comps) {
    if (comp.orbit_time == 0) {
      comp.pos = 0;
    } else if (comp.interval.hi <= ci.lo) {
      left.push_back(&comp);
    } else if (comp.interval.lo >= ci.hi) {
      right.push_back(&comp);
    } else {
      throw AdmissibilityViolation("nest components overlap the central interval");
    }
  }
  std::sort(left.begin(), left.end(),
            [](const NestComponent* a, const NestComponent* b) { return a->interval.hi > b->interval.hi; });
  std::sort(right.begin(), right.end(),
            [](const NestComponent* a, const NestComponent* b) { return a->interval.lo < b->interval.lo; });
  for (std::size_t i = 0; i < left.size(); ++i) left[i]->pos = -static_cast<int>(i) - 1;
  for (std::size_t i = 0; i < right.size(); ++i) right[i]->pos = static_cast<int>(i) + 1;
  std::sort(comps.begin(), comps.end(),
            [](const NestComponent& a, const NestComponent& b) { return a.pos < b.pos; });
}

}  // namespace

PrincipalNest build_nest(ext c, int period, int max_level) {
  if (period < 2) throw PreconditionViolation("build_nest requires period >= 2");
  PrincipalNest nest;
  nest.c = c;
  nest.period = period;
  const RealFixedPoints fp = real_fixed_points(c);
  nest.alpha = fp.alpha;
  nest.beta = fp.beta;
  if (!(nest.alpha < 0)) throw PreconditionViolation("build_nest requires alpha < 0");

  ext x = 0;
  for (int t = 0; t < period; ++t) {
    nest.orbit.push_back(x);
    x = x * x + c;
    if (t + 1 < period && std::fabs(x) <= 1e-12L) {
      throw NotSuperattracting("critical orbit returns before the stated period");
    }
  }
  if (!(std::fabs(x) <= 1e-9L)) {
    throw NotSuperattracting("f^p(0) = " + std::to_string(static_cast<double>(x)));
  }
  const int p = period;
  const std::vector<ext>& orb = nest.orbit;
  auto at = [&](int t) { return orb[static_cast<std::size_t>(((t % p) + p) % p)]; };

  {
    NestLevel l0;
    l0.components.push_back({{-nest.beta, nest.alpha}, -1, -1, 0, -1, {}});
    l0.components.push_back({{nest.alpha, -nest.alpha}, 0, 1, 0, 0, {}});
    l0.components.push_back({{-nest.alpha, nest.beta}, 1, 1, 0, -1, {}});
    nest.levels.push_back(l0);
  }

  const Interval whole{-nest.beta, nest.beta};
  for (int m = 1;; ++m) {
    if (m > max_level) {
      throw LevelBudgetExceeded("nest not terminated after " + std::to_string(max_level) + " levels");
    }
    const Interval prev = nest.central(m - 1);
    const Interval outer = (m >= 2) ? nest.central(m - 2) : whole;
    const NestLevel& below = nest.levels[static_cast<std::size_t>(m - 1)];
    std::vector<NestComponent> comps;
    for (int t = 0; t < p; ++t) {
      const ext xt = orb[static_cast<std::size_t>(t)];
      if (!prev.contains_open(xt)) continue;
      bool known = false;
      for (const auto& comp : comps) {
        if (comp.interval.contains(xt)) known = true;
      }
      if (known) continue;
      int r = 1;
      while (!prev.contains_open(at(t + r))) ++r;
      Interval piece = prev;
      for (int k = r - 1; k >= 0; --k) piece = pull_back(c, piece, at(t + k));
      if (!piece.contains(xt)) throw AdmissibilityViolation("pull-back lost its orbit point");
      NestComponent comp;
      comp.interval = piece;
      comp.return_time = r;
      comp.orbit_time = t;
      int sign = 1;
      for (int j = (t == 0 ? 1 : 0); j < r; ++j) sign *= orbit_sign(at(t + j));
      comp.sign = sign;
      for (int j = 1; j <= r; ++j) {
        const ext y = at(t + j);
        if (!outer.contains(y)) continue;
        int pos = 0;
        if (!below.locate(y, pos)) {
          throw AdmissibilityViolation("orbit point outside every level-" + std::to_string(m - 1) +
                                       " component");
        }
        comp.word.push_back(pos);
      }
      comps.push_back(comp);
    }
    assign_positions(comps);
    NestLevel level;
    level.components = std::move(comps);
    const NestComponent& central = level.central();
    if (!(central.interval.width() < prev.width())) {
      throw PrecisionExhausted(m, "nest intervals stopped shrinking");
    }
    const bool last = level.components.size() == 1;
    if (last && m == 1 && central.return_time == 2) {
      throw ImmediatelyRenormalizable("first return to I^0 has period 2");
    }
    nest.levels.push_back(std::move(level));
    if (last) break;
  }
  for (int m = 1; m < nest.top(); ++m) {
    if (nest.levels[static_cast<std::size_t>(m + 1)].central().word.front() != 0) {
      nest.noncentral_levels.push_back(m);
    }
  }
  return nest;
}

ReturnTypeSequence return_type_sequence(const PrincipalNest& nest) {
  ReturnTypeSequence seq;
  for (int m = 0; m <= nest.top(); ++m) {
    std::vector<Generator> gens;
    for (const auto& comp : nest.levels[static_cast<std::size_t>(m)].components) {
      gens.push_back({comp.pos, comp.sign});
    }
    seq.levels.push_back(SignedSemigroup::from(gens));
  }
  for (int m = 1; m <= nest.top(); ++m) {
    ReturnHom chi;
    chi.source = seq.levels[static_cast<std::size_t>(m)];
    chi.target = seq.levels[static_cast<std::size_t>(m - 1)];
    for (const auto& comp : nest.levels[static_cast<std::size_t>(m)].components) {
      chi.words[comp.pos] = comp.word;
    }
    seq.homs.push_back(chi);
  }
  if (!is_irreducible(seq)) seq = reduce(seq);
  seq.irreducible = true;
  check_sequence(seq);
  return seq;
}

CascadeData cascade_data(const PrincipalNest& nest, const std::vector<ext>& postcritical) {
  CascadeData data;
  data.top = nest.top();
  data.period = static_cast<int>(postcritical.size());
  data.noncentral = nest.noncentral_levels;
  data.central_return.assign(static_cast<std::size_t>(data.top) + 1, 0);
  data.central_sign.assign(static_cast<std::size_t>(data.top) + 1, 1);
  for (int m = 1; m <= data.top; ++m) {
    const NestComponent& c = nest.levels[static_cast<std::size_t>(m)].central();
    data.central_return[static_cast<std::size_t>(m)] = c.return_time;
    data.central_sign[static_cast<std::size_t>(m)] = c.sign;
  }
  for (ext x : postcritical) {
    data.depth.push_back(nest.depth(x));
    data.side.push_back(x < 0 ? -1 : (x > 0 ? 1 : 0));
  }
  return data;
}

std::vector<Cascade> detect_cascades(const PrincipalNest& nest) {
  return cascades_from_data(cascade_data(nest, nest.orbit));
}

ShuffleNest nest_of_shuffle(const Shuffle& sigma, const CenterOptions& opts) {
  if (sigma.immediately_renormalizable) {
    throw ImmediatelyRenormalizable("sigma^(2) has no principal nest");
  }
  ShuffleNest out;
  out.center = center_of_shuffle(sigma, opts);
  out.nest = build_nest(out.center.c, sigma.period());
  out.sequence = return_type_sequence(out.nest);
  return out;
}

int essential_period(const Shuffle& sigma, const CenterOptions& opts) {
  if (sigma.immediately_renormalizable) return 2;
  const ShuffleNest sn = nest_of_shuffle(sigma, opts);
  const CascadeData data = cascade_data(sn.nest, sn.nest.orbit);
  return essential_period_from_data(data, cascades_from_data(data));
}

bool essentially_equivalent(const Shuffle& a, const Shuffle& b, const CenterOptions& opts) {
  if (a.immediately_renormalizable || b.immediately_renormalizable) return a == b;
  if (a == b) return true;
  return canonical_form(nest_of_shuffle(a, opts).sequence) ==
         canonical_form(nest_of_shuffle(b, opts).sequence);
}

CompactShuffle compact_coords(const Shuffle& sigma, const CenterOptions& opts) {
  return compact_coords(nest_of_shuffle(sigma, opts).sequence);
}

RootSolve c_of_end(const ReturnTypeSequence& representative, int cascade_index,
                   const CenterOptions& opts) {
  const std::vector<Cascade> cascades = detect_cascades(representative);
  if (cascade_index < 0 || cascade_index >= static_cast<int>(cascades.size())) {
    throw PreconditionViolation("cascade index out of range");
  }
  const Cascade& cas = cascades[static_cast<std::size_t>(cascade_index)];
  if (cas.neglectable.empty()) {
    throw NotNeglectable("cascade " + std::to_string(cascade_index) + " has no neglectable level");
  }
  const int l = cas.neglectable[cas.neglectable.size() / 2];
  return root_of_copy(truncate(representative, l), opts);
}

}  // namespace renormlab
