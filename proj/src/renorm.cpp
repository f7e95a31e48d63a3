#include "renormlab/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "renormlab/errors.hpp"
#include "renormlab/shuffle.hpp"

namespace renormlab {

namespace {

constexpr int kRootSamples = 513;
constexpr int kDerivativeSamples = 257;
constexpr int kBisectionSteps = 100;

ext bisect_root(const std::function<ext(ext)>& h, ext lo, ext hi) {
  ext flo = h(lo);
  for (int it = 0; it < kBisectionSteps; ++it) {
    const ext mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    const ext fm = h(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

struct Candidate {
  ext b;
  bool min_type;
};

bool valid_interval(const RenormGerm& g, int n, const Candidate& cand, ext vn, ext scale) {
  const ext b = cand.b;
  if (!(b > 0) || std::fabs(vn) > b) return false;
  for (int i = 1; i <= kDerivativeSamples; ++i) {
    const ext x = b * static_cast<ext>(i) / kDerivativeSamples;
    const ext d = g.eval_iter_d(x, n).second;
    if (cand.min_type ? !(d > 0) : !(d < 0)) return false;
  }
  if (std::fabs(g.eval_iter_d(b, n).second) < 1 - 1e-9L) return false;
  std::vector<Interval> pieces{{-b, b}};
  ext y0 = 0, yb = b;
  for (int k = 1; k < n; ++k) {
    y0 = g.eval(y0);
    yb = g.eval(yb);
    pieces.push_back({std::min(y0, yb), std::max(y0, yb)});
  }
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& c) { return a.lo < c.lo; });
  const ext tol = 1e-12L * scale;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i + 1].lo < pieces[i].hi - tol) return false;
  }
  return true;
}

std::optional<RenormStage> test_period(const RenormGerm& g, int n, const std::vector<ext>& v) {
  const ext dom = g.domain_half_width();
  Itinerary sides;
  for (int k = 1; k < n; ++k) {
    const Sym s = side_of(v[static_cast<std::size_t>(k)]);
    if (s == Sym::C) return std::nullopt;
    sides.push_back(s);
  }
  auto same_cylinder = [&](ext x) {
    ext y = x;
    for (int k = 1; k < n; ++k) {
      y = g.eval(y);
      if (side_of(y) != sides[static_cast<std::size_t>(k - 1)]) return false;
    }
    return true;
  };
  ext x_end = dom;
  if (!same_cylinder(dom)) {
    ext lo = 0, hi = dom;
    for (int it = 0; it < kBisectionSteps; ++it) {
      const ext mid = (lo + hi) / 2;
      if (mid <= lo || mid >= hi) break;
      (same_cylinder(mid) ? lo : hi) = mid;
    }
    x_end = lo;
  }
  if (!(x_end > 0)) return std::nullopt;
  const ext vn = v[static_cast<std::size_t>(n)];
  std::vector<Candidate> roots;
  for (int sign : {-1, 1}) {
    // sign -1: g^n(x) = x (minimum type); sign +1: g^n(x) = -x (maximum type).
    auto h = [&](ext x) { return g.eval_iter(x, n) + static_cast<ext>(sign) * x; };
    ext prev_x = x_end / (kRootSamples - 1);
    ext prev_h = h(prev_x);
    for (int i = 2; i < kRootSamples; ++i) {
      const ext x = x_end * static_cast<ext>(i) / (kRootSamples - 1);
      const ext hx = h(x);
      if (hx == 0) {
        roots.push_back({x, sign < 0});
      } else if ((hx < 0) != (prev_h < 0) && prev_h != 0) {
        roots.push_back({bisect_root(h, prev_x, x), sign < 0});
      }
      prev_x = x;
      prev_h = hx;
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Candidate& a, const Candidate& b) { return a.b > b.b; });
  for (const auto& cand : roots) {
    if (valid_interval(g, n, cand, vn, dom)) {
      RenormStage s;
      s.period = n;
      s.b = cand.b;
      s.beta = cand.min_type ? cand.b : -cand.b;
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<RenormStage> detect_renormalizable(const RenormGerm& g, int max_period) {
  if (max_period < 2 || max_period > kMaxRenormPeriod) {
    throw PreconditionViolation("max_period must lie in [2, 64]");
  }
  std::vector<ext> v{0};
  for (int k = 1; k <= max_period; ++k) v.push_back(g.eval(v.back()));
  ext closest = std::fabs(v[1]);
  for (int n = 2; n <= max_period; ++n) {
    const ext d = std::fabs(v[static_cast<std::size_t>(n)]);
    if (d < closest) {
      closest = d;
      if (auto s = test_period(g, n, v)) return s;
    }
  }
  return std::nullopt;
}

RenormGerm renormalize(const RenormGerm& g, int max_period) {
  const auto stage = detect_renormalizable(g, max_period);
  if (!stage) throw NotRenormalizable(g.level());
  const ext width = stage->b * g.base_half_width();
  if (!(width >= 1e-12L)) {
    throw PrecisionExhausted(g.level() + 1, "renormalization interval of half-width " +
                                                std::to_string(static_cast<double>(width)));
  }
  return g.with_stage(*stage);
}

RenormDiagnostics diagnose(const RenormGerm& g, int stage) {
  RenormDiagnostics d;
  d.stage = stage;
  d.period = g.stages().empty() ? 0 : g.stages().back().period;
  d.kneading_prefix = g.critical_itinerary(kDiagnosticDepth).symbols;
  d.critical_value = g.eval(0);
  d.beta = g.domain_half_width();
  d.base_half_width = g.base_half_width();
  if (g.stages().empty()) {
    d.alpha = real_fixed_points(g.base_c()).alpha;
  } else if (d.critical_value < 0) {
    d.alpha = bisect_root([&](ext x) { return g.eval(x) - x; }, -d.beta, 0);
  } else {
    d.alpha = std::numeric_limits<ext>::quiet_NaN();
  }
  d.inner = inner_class_real(g, kDiagnosticDepth);
  return d;
}

std::vector<RenormDiagnostics> renorm_orbit(ext c, int k, int max_period) {
  if (k < 0) throw PreconditionViolation("k must be nonnegative");
  std::vector<RenormDiagnostics> out;
  RenormGerm g(c);
  for (int j = 1; j <= k; ++j) {
    g = renormalize(g, max_period);
    out.push_back(diagnose(g, j));
  }
  return out;
}

const MapBranch* PiecewiseMap::branch_at(ext x) const {
  for (const auto& b : branches) {
    if (b.domain.contains(x)) return &b;
  }
  return nullptr;
}

namespace {

struct LandingKey {
  int time = 0;
  Itinerary tail;  // sides after the starting point
  bool operator==(const LandingKey& o) const { return time == o.time && tail == o.tail; }
};

bool in_any(const std::vector<Interval>& targets, ext x) {
  return std::any_of(targets.begin(), targets.end(), [&](const Interval& t) { return t.contains(x); });
}

// First k >= first with g^k(x) in the targets.
LandingKey landing(const RenormGerm& g, ext x, const std::vector<Interval>& targets, int first,
                   int budget) {
  LandingKey key;
  ext y = x;
  for (int k = 0; k <= budget; ++k) {
    if (k >= first && in_any(targets, y)) {
      key.time = k;
      return key;
    }
    if (k > 0) key.tail.push_back(side_of(y));
    y = g.eval(y);
  }
  throw LandingBudgetExceeded("no landing within " + std::to_string(budget) + " steps from x = " +
                              std::to_string(static_cast<double>(x)));
}

PiecewiseMap build_branches(const RenormGerm& g, const Interval& domain,
                            const std::vector<Interval>& targets, int first, int extra,
                            const BranchOptions& opts) {
  if (!(domain.width() > 0) || opts.samples < 2) throw PreconditionViolation("empty branch domain");
  const int n = opts.samples;
  std::vector<ext> xs(static_cast<std::size_t>(n));
  std::vector<LandingKey> keys(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = domain.lo + domain.width() * static_cast<ext>(i) / (n - 1);
    keys[static_cast<std::size_t>(i)] = landing(g, xs[static_cast<std::size_t>(i)], targets, first,
                                                opts.landing_budget);
  }
  PiecewiseMap map;
  auto close_branch = [&](ext lo, ext hi, const LandingKey& key) {
    if (!(hi > lo) && map.branches.size() + 1 < static_cast<std::size_t>(n)) return;
    MapBranch b;
    b.domain = {lo, hi};
    b.time = key.time + extra;
    b.itinerary.push_back((lo < 0 && hi > 0) ? Sym::C : side_of(b.domain.mid()));
    b.itinerary.insert(b.itinerary.end(), key.tail.begin(), key.tail.end());
    if (b.itinerary.size() > static_cast<std::size_t>(b.time)) b.itinerary.resize(static_cast<std::size_t>(b.time));
    if (lo < 0 && hi > 0) {
      b.sign = 0;
    } else {
      const ext d = g.eval_iter_d(b.domain.mid(), b.time).second;
      b.sign = d > 0 ? 1 : (d < 0 ? -1 : 0);
    }
    map.branches.push_back(b);
  };
  ext start = domain.lo;
  std::size_t run_begin = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (keys[i] == keys[run_begin]) continue;
    ext lo = xs[i - 1], hi = xs[i];
    for (int it = 0; it < opts.refine_steps; ++it) {
      const ext mid = (lo + hi) / 2;
      if (mid <= lo || mid >= hi) break;
      (landing(g, mid, targets, first, opts.landing_budget) == keys[run_begin] ? lo : hi) = mid;
    }
    close_branch(start, lo, keys[run_begin]);
    start = hi;
    run_begin = i;
  }
  close_branch(start, domain.hi, keys[run_begin]);
  return map;
}

}  // namespace

PiecewiseMap first_return_map(const RenormGerm& g, const Interval& u, const BranchOptions& opts) {
  return build_branches(g, u, {u}, 1, 0, opts);
}

PiecewiseMap first_through_map(const RenormGerm& g, const Interval& domain,
                               const std::vector<Interval>& targets, const BranchOptions& opts) {
  if (targets.empty()) throw PreconditionViolation("first_through_map needs a target");
  return build_branches(g, domain, targets, 0, 1, opts);
}

std::string to_string(Per3Verdict v) {
  switch (v) {
    case Per3Verdict::Pass: return "PASS";
    case Per3Verdict::Fail: return "FAIL";
    case Per3Verdict::Inconclusive: return "INCONCLUSIVE";
    case Per3Verdict::NoVerdict: return "NO_VERDICT";
  }
  return "NO_VERDICT";
}

Per3Report run_per3(const Per3Config& cfg) {
  Per3Report rep;
  rep.tuning = cfg.tuning;
  if (cfg.stages < 0 || cfg.stages > static_cast<int>(cfg.tuning.size())) {
    throw PreconditionViolation("stages must lie in [0, number of tuning entries]");
  }
  for (int n : cfg.tuning) {
    if (n < 1) throw PreconditionViolation("tuning entries must be at least 1");
  }
  for (int s = 1; s < cfg.stages; ++s) {
    if (3 * cfg.tuning[static_cast<std::size_t>(s - 1)] + 2 > kMaxRenormPeriod) {
      throw PreconditionViolation("tuning entry " + std::to_string(cfg.tuning[static_cast<std::size_t>(s - 1)]) +
                                  " needs a renormalization period above " + std::to_string(kMaxRenormPeriod));
    }
  }
  if (cfg.stages == 0) {
    rep.verdict = Per3Verdict::Pass;
    rep.message = "no stages requested";
    return rep;
  }
  Shuffle sigma = sigma3_n(cfg.tuning.front());
  for (std::size_t j = 1; j < cfg.tuning.size(); ++j) sigma = star_product(sigma, sigma3_n(cfg.tuning[j]));
  rep.period = sigma.period();

  CenterOptions opts;
  opts.residual_tolerance = std::numeric_limits<double>::infinity();
  const CenterSolve centre =
      center_of_kneading(kneading_from_perm(sigma.perm), -2.0L, 0.25L, opts, false);
  rep.c = centre.c;
  rep.residual = centre.residual;

  const Itinerary reference = kneading(-1.75L, kDiagnosticDepth);
  RenormGerm g(rep.c);
  for (int s = 0; s < cfg.stages; ++s) {
    if (s > 0) {
      const int expected = 3 * cfg.tuning[static_cast<std::size_t>(s - 1)] + 2;
      try {
        g = renormalize(g);
      } catch (const PrecisionExhausted& e) {
        rep.verdict = Per3Verdict::Inconclusive;
        rep.message = e.what();
        return rep;
      } catch (const NotRenormalizable& e) {
        rep.verdict = Per3Verdict::Fail;
        rep.message = e.what();
        return rep;
      }
      if (g.stages().back().period != expected) {
        rep.verdict = Per3Verdict::Inconclusive;
        rep.message = "stage " + std::to_string(s) + " renormalized with period " +
                      std::to_string(g.stages().back().period) + " instead of " +
                      std::to_string(expected);
        return rep;
      }
    }
    const RenormDiagnostics d = diagnose(g, s);
    Per3Row row;
    row.stage = s;
    row.period = d.period;
    row.bracket = d.inner.bracket;
    row.midpoint = d.inner.bracket.mid();
    row.agreement = agreement_depth(d.kneading_prefix, reference);
    row.itinerary_undefined = d.inner.itinerary_undefined;
    rep.rows.push_back(row);
  }

  const bool increasing = std::adjacent_find(cfg.tuning.begin(), cfg.tuning.end(),
                                             [](int a, int b) { return b <= a; }) == cfg.tuning.end();
  if (!increasing) {
    rep.verdict = Per3Verdict::NoVerdict;
    rep.message = "tuning is not strictly increasing; convergence is not asserted";
    return rep;
  }
  bool closer = true, deeper = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (!(std::fabs(rep.rows[i].midpoint + 1.75L) < std::fabs(rep.rows[i - 1].midpoint + 1.75L))) closer = false;
    if (rep.rows[i].agreement < rep.rows[i - 1].agreement) deeper = false;
  }
  const bool within = std::fabs(rep.rows.back().midpoint + 1.75L) <= static_cast<ext>(cfg.delta);
  rep.verdict = (closer && deeper && within) ? Per3Verdict::Pass : Per3Verdict::Fail;
  if (!closer) rep.message = "midpoints do not approach -1.75 monotonically";
  else if (!deeper) rep.message = "agreement depth decreased";
  else if (!within) rep.message = "final midpoint outside the tolerance";
  else rep.message = "converging toward -1.75";
  return rep;
}

}  // namespace renormlab
