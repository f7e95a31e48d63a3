#include "renormlab/solver.hpp"

#include <cmath>
#include <sstream>

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

constexpr ext kCMin = -2.0L;
constexpr ext kCMax = 0.25L;

int knead_cmp(ext c, const Itinerary& target) {
  return compare_itineraries(kneading(c, static_cast<int>(target.size())), target);
}

ext critical_orbit_value(ext c, int p, ext* dc) {
  ext x = 0, d = 0;
  for (int k = 0; k < p; ++k) {
    d = 2 * x * d + 1;
    x = x * x + c;
  }
  if (dc) *dc = d;
  return x;
}

}  // namespace

CenterSolve center_of_kneading(const Itinerary& k, ext lo, ext hi, const CenterOptions& opts,
                               bool newton) {
  if (k.empty() || k.back() != Sym::C) throw PreconditionViolation("kneading must end with C");
  const int p = static_cast<int>(k.size());
  if (!(knead_cmp(lo, k) < 0 && knead_cmp(hi, k) > 0)) {
    throw NoBracket("kneading " + to_string(k) + " is not bracketed by the search interval");
  }
  for (int it = 0; it < opts.bisection_steps; ++it) {
    const ext mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    const int s = knead_cmp(mid, k);
    if (s < 0) {
      lo = mid;
    } else if (s > 0) {
      hi = mid;
    } else {
      lo = hi = mid;
      break;
    }
  }
  CenterSolve out;
  out.bracket = {lo, hi};
  ext c = (lo + hi) / 2;
  ext best_res = std::fabs(critical_orbit_value(c, p, nullptr));
  if (newton) {
    for (int it = 0; it < opts.newton_steps; ++it) {
      ext dc = 0;
      const ext v = critical_orbit_value(c, p, &dc);
      if (dc == 0) break;
      const ext next = c - v / dc;
      if (!(next >= lo && next <= hi)) break;
      const ext res = std::fabs(critical_orbit_value(next, p, nullptr));
      if (!(res <= best_res)) break;
      c = next;
      best_res = res;
    }
  }
  out.c = c;
  out.residual = static_cast<double>(best_res);
  if (!(out.residual <= opts.residual_tolerance)) {
    std::ostringstream os;
    os << "residual " << out.residual << " exceeds " << opts.residual_tolerance << " for period "
       << p;
    throw NewtonDivergence(os.str());
  }
  return out;
}

CenterSolve center_of_shuffle(const Shuffle& sigma, const CenterOptions& opts) {
  const int p = sigma.period();
  if (p < 2) throw PreconditionViolation("center_of_shuffle requires period >= 2");
  if (p > opts.max_period) {
    throw PreconditionViolation("period " + std::to_string(p) + " exceeds the configured maximum " +
                                std::to_string(opts.max_period));
  }
  const Itinerary k = kneading_from_perm(sigma.perm);
  CenterSolve out = center_of_kneading(k, kCMin, kCMax, opts);
  Shuffle back;
  try {
    back = shuffle_of_center(out.c, p);
  } catch (const Error& e) {
    throw NoBracket(std::string("round trip failed: ") + e.what());
  }
  if (!(back == sigma)) throw NoBracket("round trip produced a different permutation");
  out.sigma = back;
  return out;
}

std::vector<Sigma3Center> centers_sigma3(int n_max, const CenterOptions& opts) {
  if (n_max < 1) throw PreconditionViolation("n_max must be at least 1");
  std::vector<Sigma3Center> rows;
  ext hi = kCMax;
  for (int n = 1; n <= n_max; ++n) {
    Sigma3Center row;
    row.n = n;
    row.period = 3 * n + 2;
    try {
      const CenterSolve s = center_of_kneading(sigma3_n_kneading(n), -1.75L, hi, opts);
      row.c = s.c;
      row.residual = s.residual;
      hi = s.c;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct CycleJet {
  ext value, d, dc, ddc, dd;  // f^q(z), (f^q)'(z), d/dc f^q, d/dc (f^q)', (f^q)''
};

CycleJet cycle_jet(ext c, ext z, int q) {
  ext x = z, d = 1, xc = 0, dc = 0, dd = 0;
  for (int k = 0; k < q; ++k) {
    const ext nd = 2 * x * d;
    const ext ndc = 2 * xc * d + 2 * x * dc;
    const ext ndd = 2 * (d * d + x * dd);
    const ext nxc = 2 * x * xc + 1;
    x = x * x + c;
    d = nd;
    dc = ndc;
    dd = ndd;
    xc = nxc;
  }
  return {x, d, xc, dc, dd};
}

// Newton on (f^q(z) - z, (f^q)'(z) - lambda) in the unknowns (c, z).
bool newton_multiplier(ext& c, ext& z, int q, ext lambda, int max_steps) {
  for (int it = 0; it < max_steps; ++it) {
    const CycleJet j = cycle_jet(c, z, q);
    const ext f1 = j.value - z, f2 = j.d - lambda;
    const ext a11 = j.dc, a12 = j.d - 1, a21 = j.ddc, a22 = j.dd;
    const ext det = a11 * a22 - a12 * a21;
    if (det == 0 || !std::isfinite(static_cast<double>(det))) return false;
    const ext dc = (f1 * a22 - f2 * a12) / det;
    const ext dz = (a11 * f2 - a21 * f1) / det;
    c -= dc;
    z -= dz;
    if (!std::isfinite(static_cast<double>(c)) || !std::isfinite(static_cast<double>(z))) {
      return false;
    }
    if (std::fabs(dc) + std::fabs(dz) <= 1e-18L * (1 + std::fabs(z))) return true;
  }
  return true;
}

}  // namespace

RootSolve root_of_copy(const Shuffle& sigma, const CenterOptions& opts) {
  RootSolve out;
  out.sigma = sigma;
  const int q = sigma.period();
  out.q = q;
  if (sigma.immediately_renormalizable) {
    // The period-2 copy is attached to the main cardioid: its root is where the
    // fixed point alpha has multiplier -1.
    ext c = -0.7L, z = -0.4L;
    for (int it = 0; it < 60; ++it) {
      const ext f1 = z * z + c - z, f2 = 2 * z + 1;
      const ext dz = f2 / 2;
      const ext dc = f1 - (2 * z - 1) * dz;
      z -= dz;
      c -= dc;
      if (std::fabs(dz) + std::fabs(dc) < 1e-19L) break;
    }
    const CycleJet j = cycle_jet(c, z, q);
    out.c = c;
    out.z = z;
    out.cycle_residual = static_cast<double>(std::fabs(j.value - z));
    out.multiplier_residual = static_cast<double>(std::fabs(j.d - 1));
  } else {
    const CenterSolve centre = center_of_shuffle(sigma, opts);
    ext c = centre.c, z = 0;
    const ext steps[] = {0.2L, 0.4L, 0.6L, 0.8L, 0.9L, 0.95L, 0.98L, 0.99L, 0.995L, 0.999L, 1.0L};
    for (ext lambda : steps) {
      if (!newton_multiplier(c, z, q, lambda, 60)) {
        throw NewtonDivergence("multiplier continuation failed at lambda " +
                               std::to_string(static_cast<double>(lambda)));
      }
    }
    const CycleJet j = cycle_jet(c, z, q);
    out.c = c;
    out.z = z;
    out.cycle_residual = static_cast<double>(std::fabs(j.value - z));
    out.multiplier_residual = static_cast<double>(std::fabs(j.d - 1));
  }
  if (!(out.cycle_residual <= 1e-10 && out.multiplier_residual <= 1e-10)) {
    throw NewtonDivergence("root residuals exceed 1e-10");
  }
  return out;
}

Interval kneading_bracket(const Itinerary& prefix, int bisection_steps) {
  if (prefix.empty()) return {kCMin, kCMax};
  auto g = [&](ext c) { return knead_cmp(c, prefix); };
  auto boundary = [&](bool lower) {
    // lower: sup{c : g(c) < 0}; upper: inf{c : g(c) > 0}.
    ext lo = kCMin, hi = kCMax;
    if (lower) {
      if (g(kCMin) >= 0) return kCMin;
      if (g(kCMax) < 0) return kCMax;
      for (int it = 0; it < bisection_steps; ++it) {
        const ext mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) break;
        (g(mid) < 0 ? lo : hi) = mid;
      }
      return lo;
    }
    if (g(kCMax) <= 0) return kCMax;
    if (g(kCMin) > 0) return kCMin;
    for (int it = 0; it < bisection_steps; ++it) {
      const ext mid = (lo + hi) / 2;
      if (mid <= lo || mid >= hi) break;
      (g(mid) > 0 ? hi : lo) = mid;
    }
    return hi;
  };
  return {boundary(true), boundary(false)};
}

InnerClass inner_class_real(const RenormGerm& germ, int depth) {
  if (depth < 0 || depth > 48) throw PreconditionViolation("depth must lie in [0, 48]");
  InnerClass out;
  const auto it = germ.critical_itinerary(depth);
  out.prefix = it.symbols;
  out.itinerary_undefined = it.undefined;
  out.depth_used = static_cast<int>(it.symbols.size());
  out.bracket = kneading_bracket(out.prefix);
  return out;
}

}  // namespace renormlab
