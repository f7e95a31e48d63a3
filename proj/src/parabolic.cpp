#include "renormlab/parabolic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

constexpr ext kPi = 3.141592653589793238462643383279502884L;

ext absx(xcplx z) { return std::abs(z); }

}  // namespace

DeviationMap::DeviationMap(std::vector<xcplx> cyc, xcplx c0_, xcplx delta_)
    : cycle(std::move(cyc)), c0(c0_), delta(delta_) {
  if (cycle.empty()) throw PreconditionViolation("deviation map needs a cycle");
  const std::size_t q = cycle.size();
  for (std::size_t k = 0; k < q; ++k) {
    residual.push_back(cycle[k] * cycle[k] + c0 - cycle[(k + 1) % q]);
  }
}

xcplx DeviationMap::forward(xcplx h) const {
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    h = h * (ext(2) * cycle[k] + h) + residual[k] + delta;
  }
  return h;
}

std::pair<xcplx, xcplx> DeviationMap::forward_d(xcplx h) const {
  xcplx d = 1;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    d *= ext(2) * (cycle[k] + h);
    h = h * (ext(2) * cycle[k] + h) + residual[k] + delta;
  }
  return {h, d};
}

xcplx DeviationMap::backward(xcplx h) const {
  for (std::size_t i = cycle.size(); i-- > 0;) {
    const xcplx xi = cycle[i];
    const xcplx v = h - residual[i] - delta;
    xcplx s = std::sqrt(xi * xi + v);
    if (std::real(s * std::conj(xi)) < 0) s = -s;
    h = v / (s + xi);
  }
  return h;
}

DeviationMap DeviationMap::perturbed(xcplx c) const {
  DeviationMap m = *this;
  m.delta = c - c0;
  return m;
}

xcplx LocalSeries::B() const { return ext(1) - b / (a * a); }

xcplx LocalSeries::d() const {
  const xcplx beta = b / (a * a);
  const xcplx gamma = -e / (a * a * a);
  const xcplx C = ext(1) - ext(2) * beta - gamma;
  const xcplx Bv = B();
  return C - Bv * Bv + Bv / ext(2);
}

LocalSeries LocalSeries::inverse() const {
  LocalSeries s;
  s.multiplier = ext(1) / multiplier;
  s.a = -a;
  s.b = ext(2) * a * a - b;
  s.e = ext(-5) * a * a * a + ext(5) * a * b - e;
  return s;
}

LocalSeries local_series(const DeviationMap& map) {
  // Truncated power series in h up to degree 4.
  std::array<xcplx, 5> p{0, 1, 0, 0, 0};
  for (const xcplx& xi : map.cycle) {
    std::array<xcplx, 5> out{};
    for (int i = 0; i < 5; ++i) {
      out[static_cast<std::size_t>(i)] += ext(2) * xi * p[static_cast<std::size_t>(i)];
      for (int j = 0; i + j < 5; ++j) {
        out[static_cast<std::size_t>(i + j)] += p[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(j)];
      }
    }
    p = out;
  }
  LocalSeries s;
  s.multiplier = p[1];
  s.a = p[2];
  s.b = p[3];
  s.e = p[4];
  return s;
}

std::vector<xcplx> polynomial_roots(const std::vector<xcplx>& coeffs) {
  std::vector<xcplx> c = coeffs;
  while (!c.empty() && c.back() == xcplx(0)) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  const xcplx lead = c.back();
  for (auto& v : c) v /= lead;
  auto eval = [&](xcplx z) {
    xcplx v = 0;
    for (int k = n; k >= 0; --k) v = v * z + c[static_cast<std::size_t>(k)];
    return v;
  };
  auto eval_d = [&](xcplx z) {
    xcplx v = 0, d = 0;
    for (int k = n; k >= 0; --k) {
      d = d * z + v;
      v = v * z + c[static_cast<std::size_t>(k)];
    }
    return std::make_pair(v, d);
  };
  ext bound = 0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, absx(c[static_cast<std::size_t>(k)]));
  bound = 1 + bound;
  std::vector<xcplx> z(static_cast<std::size_t>(n));
  const xcplx seed(0.4L, 0.9L);
  xcplx pw = 1;
  for (int k = 0; k < n; ++k) {
    z[static_cast<std::size_t>(k)] = pw * bound / ext(2);
    pw *= seed;
  }
  for (int it = 0; it < 5000; ++it) {
    ext change = 0;
    for (int i = 0; i < n; ++i) {
      xcplx den = 1;
      for (int j = 0; j < n; ++j) {
        if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      }
      if (den == xcplx(0)) den = 1e-30L;
      const xcplx step = eval(z[static_cast<std::size_t>(i)]) / den;
      z[static_cast<std::size_t>(i)] -= step;
      change = std::max(change, absx(step));
    }
    if (change < 1e-18L * bound) break;
  }
  for (auto& r : z) {
    for (int it = 0; it < 8; ++it) {
      const auto [v, d] = eval_d(r);
      if (d == xcplx(0)) break;
      const xcplx next = r - v / d;
      if (!(absx(eval(next)) < absx(v))) break;
      r = next;
    }
  }
  return z;
}

xcplx ParabolicChart::anchor(PetalSide side) const {
  const ext rho = 1 / (2 * absx(a));
  return side == PetalSide::Incoming ? xi + rho * u_in : xi - rho * u_in;
}

bool ParabolicChart::in_petal(xcplx z, PetalSide side) const {
  const ext r = radius(side);
  const xcplx centre = side == PetalSide::Incoming ? xi + r * u_in : xi - r * u_in;
  return absx(z - centre) < r;
}

namespace {

struct CycleJet {
  xcplx v, d1, d2;
};

CycleJet cycle_jet(xcplx c, xcplx z, int q) {
  xcplx d1 = 1, d2 = 0;
  for (int k = 0; k < q; ++k) {
    d2 = ext(2) * (d1 * d1 + z * d2);
    d1 = ext(2) * z * d1;
    z = z * z + c;
  }
  return {z, d1, d2};
}

bool petal_invariant(const ParabolicChart& ch, ext r) {
  ParabolicChart probe = ch;
  probe.petal_radius = static_cast<double>(r);
  for (int i = 1; i <= 25; ++i) {
    const ext rho = static_cast<ext>(i) / 26;
    for (int j = 0; j < 40; ++j) {
      const ext th = 2 * kPi * j / 40;
      const xcplx h = r * ch.u_in * (ext(1) + rho * xcplx(std::cos(th), std::sin(th)));
      const xcplx img = ch.map.forward(h);
      if (absx(img) == 0) continue;
      if (!probe.in_petal(ch.xi + img, PetalSide::Incoming)) return false;
    }
  }
  return true;
}

// Points w with f^k(w) = 0 for some k < q: the critical points of f^q.
std::vector<xcplx> critical_points(xcplx c, int q) {
  std::vector<xcplx> all{0}, layer{0};
  for (int k = 1; k < q; ++k) {
    std::vector<xcplx> next;
    for (const xcplx& p : layer) {
      const xcplx s = std::sqrt(p - c);
      next.push_back(s);
      next.push_back(-s);
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

bool petal_univalent(const ParabolicChart& ch, ext r, PetalSide side, const std::vector<xcplx>& crit) {
  const xcplx centre = side == PetalSide::Incoming ? ch.xi + r * ch.u_in : ch.xi - r * ch.u_in;
  for (const xcplx& w : crit) {
    if (absx(w - centre) <= r) return false;
  }
  return true;
}

}  // namespace

ParabolicChart detect_parabolic(cplx c_in, int q) {
  if (q < 1 || q > 10) throw PreconditionViolation("q must lie in [1, 10]");
  const xcplx c = to_xcplx(c_in);
  std::vector<xcplx> poly{0, 1};
  for (int k = 0; k < q; ++k) {
    std::vector<xcplx> sq(poly.size() * 2 - 1, xcplx(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      for (std::size_t j = 0; j < poly.size(); ++j) sq[i + j] += poly[i] * poly[j];
    }
    sq[0] += c;
    poly = std::move(sq);
  }
  poly[1] -= ext(1);
  const std::vector<xcplx> roots = polynomial_roots(poly);
  xcplx best = 0;
  ext best_dist = std::numeric_limits<ext>::infinity();
  for (const xcplx& r : roots) {
    const ext dist = absx(cycle_jet(c, r, q).d1 - ext(1));
    if (dist < best_dist) {
      best_dist = dist;
      best = r;
    }
  }
  // Polish on the multiplier equation, which has a simple root at a parabolic point.
  xcplx z = best;
  for (int it = 0; it < 60; ++it) {
    const CycleJet j = cycle_jet(c, z, q);
    if (j.d2 == xcplx(0)) break;
    const xcplx step = (j.d1 - ext(1)) / j.d2;
    z -= step;
    if (absx(step) <= 1e-19L * (1 + absx(z))) break;
  }
  if (!(absx(cycle_jet(c, z, q).v - z) <= 1e-12L) || !std::isfinite(static_cast<double>(absx(z)))) z = best;
  const xcplx lambda = cycle_jet(c, z, q).d1;
  if (!(absx(lambda - ext(1)) <= 1e-6L)) {
    throw NotParabolic("closest multiplier of a period-" + std::to_string(q) + " cycle is at distance " +
                       std::to_string(static_cast<double>(absx(lambda - ext(1)))) + " from 1");
  }
  std::vector<xcplx> orbit;
  xcplx w = z;
  for (int k = 0; k < q; ++k) {
    orbit.push_back(w);
    w = w * w + c;
  }
  const auto start = std::min_element(orbit.begin(), orbit.end(),
                                      [](const xcplx& x, const xcplx& y) { return absx(x) < absx(y); });
  std::rotate(orbit.begin(), start, orbit.end());

  ParabolicChart ch;
  ch.c = c;
  ch.q = q;
  ch.cycle = orbit;
  ch.xi = orbit.front();
  ch.map = DeviationMap(orbit, c);
  // Rounding residuals of the cycle act like a perturbation of size 1e-19 and
  // spoil the deep asymptotics; the chart treats the cycle as exact.
  std::fill(ch.map.residual.begin(), ch.map.residual.end(), xcplx(0));
  ch.series = local_series(ch.map);
  ch.multiplier = ch.series.multiplier;
  ch.a = ch.series.a;
  ch.b = ch.series.b;
  if (!(absx(ch.a) > 1e-6L)) {
    throw DegenerateParabolic("quadratic coefficient " + std::to_string(static_cast<double>(absx(ch.a))));
  }
  ch.B = ch.series.B();
  ch.u_in = -std::conj(ch.a) / absx(ch.a);
  const std::vector<xcplx> crit = critical_points(c, q);
  ext r = 1 / absx(ch.a);
  for (int j = 0; j < 40 && ch.petal_radius == 0; ++j, r /= 2) {
    if (petal_invariant(ch, r)) ch.petal_radius = static_cast<double>(r);
  }
  if (ch.petal_radius == 0) throw DegenerateParabolic("no invariant petal found");
  r = ch.petal_radius;
  while (!petal_univalent(ch, r, PetalSide::Outgoing, crit)) r /= 2;
  ch.petal_radius_out = static_cast<double>(r);
  r = ch.petal_radius;
  while (!(petal_univalent(ch, r, PetalSide::Incoming, crit) && petal_invariant(ch, r))) {
    r /= 2;
    if (r < 1e-12L * ch.petal_radius) throw DegenerateParabolic("no univalent invariant petal found");
  }
  ch.petal_radius = static_cast<double>(r);
  return ch;
}

cplx nearest_parabolic_parameter(cplx c_in, int q) {
  if (q < 1 || q > 10) throw PreconditionViolation("q must lie in [1, 10]");
  xcplx c = to_xcplx(c_in);
  std::vector<xcplx> poly{0, 1};
  for (int k = 0; k < q; ++k) {
    std::vector<xcplx> sq(poly.size() * 2 - 1, xcplx(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      for (std::size_t j = 0; j < poly.size(); ++j) sq[i + j] += poly[i] * poly[j];
    }
    sq[0] += c;
    poly = std::move(sq);
  }
  poly[1] -= ext(1);
  xcplx z = 0;
  ext best = std::numeric_limits<ext>::infinity();
  for (const xcplx& r : polynomial_roots(poly)) {
    const ext dist = absx(cycle_jet(c, r, q).d1 - ext(1));
    if (dist < best) {
      best = dist;
      z = r;
    }
  }
  for (int it = 0; it < 100; ++it) {
    // Partial derivatives of w = f^q(z) and w' = (f^q)'(z) in z and c.
    xcplx w = z, wz = 1, wc = 0, wzz = 0, wzc = 0;
    for (int k = 0; k < q; ++k) {
      wzz = ext(2) * (wz * wz + w * wzz);
      wzc = ext(2) * (wc * wz + w * wzc);
      wz = ext(2) * w * wz;
      wc = ext(2) * w * wc + ext(1);
      w = w * w + c;
    }
    const xcplx g1 = w - z, g2 = wz - ext(1);
    const xcplx a11 = wz - ext(1), a12 = wc, a21 = wzz, a22 = wzc;
    const xcplx det = a11 * a22 - a12 * a21;
    if (absx(det) == 0) throw NoConvergence("singular Jacobian in the parabolic parameter solve");
    const xcplx dz = (g1 * a22 - a12 * g2) / det;
    const xcplx dc = (a11 * g2 - a21 * g1) / det;
    z -= dz;
    c -= dc;
    if (absx(dz) + absx(dc) <= 1e-18L * (1 + absx(c))) break;
    if (it == 99) throw NoConvergence("parabolic parameter solve did not converge");
  }
  cplx out = to_cplx(c);
  if (c_in.imag() == 0 && std::abs(out.imag()) < 1e-12) out.imag(0);
  return out;
}

xcplx fatou_raw(const DeviationMap& map, const LocalSeries& s, bool inverse_branch, xcplx h,
                const FatouOptions& opts) {
  auto step = [&](xcplx x) { return inverse_branch ? map.backward(x) : map.forward(x); };
  const xcplx a = s.a, B = s.B(), d = s.d();
  const ext deep = static_cast<ext>(opts.deep_modulus);
  long n = 0;
  auto w_of = [&](xcplx x) { return ext(-1) / (a * x); };
  for (;;) {
    const xcplx w = w_of(h);
    if (absx(w) >= deep && w.real() > absx(w) / 2) break;
    if (++n > opts.budget) throw SlowConvergence(static_cast<double>(absx(w)), n);
    h = step(h);
  }
  auto sample = [&](xcplx x, long k) {
    const xcplx w = w_of(x);
    return std::make_pair(w, w - static_cast<ext>(k) - B * std::log(w) + d / w);
  };
  auto [w0, s0] = sample(h, n);
  xcplx prev_extrap = s0;
  bool have_prev = false;
  ext threshold = absx(w0);
  for (int level = 0; level < 40; ++level) {
    threshold *= 2;
    while (absx(w_of(h)) < threshold) {
      if (++n > opts.budget) throw SlowConvergence(static_cast<double>(absx(w_of(h))), n);
      h = step(h);
    }
    const auto [w1, s1] = sample(h, n);
    const xcplx t0 = ext(1) / (w0 * w0), t1 = ext(1) / (w1 * w1);
    const xcplx extrap = s1 + (s1 - s0) * t1 / (t0 - t1);
    if (have_prev && absx(extrap - prev_extrap) < static_cast<ext>(opts.tolerance)) return extrap;
    prev_extrap = extrap;
    have_prev = true;
    w0 = w1;
    s0 = s1;
  }
  throw SlowConvergence(static_cast<double>(absx(w0)), n);
}

FatouCoordinate::FatouCoordinate(const ParabolicChart& chart, PetalSide side, const FatouOptions& opts)
    : FatouCoordinate(chart, side, chart.anchor(side), opts) {}

FatouCoordinate::FatouCoordinate(const ParabolicChart& chart, PetalSide side, xcplx anchor,
                                 const FatouOptions& opts)
    : chart_(chart), side_(side), anchor_(anchor), opts_(opts) {
  series_ = side == PetalSide::Incoming ? chart.series : chart.series.inverse();
  offset_ = raw(anchor_);
}

xcplx FatouCoordinate::raw(xcplx z) const {
  const ParabolicChart& ch = chart_;
  const ext escape = 2 + absx(ch.c) + 2;
  xcplx h = z - ch.xi;
  long k = 0;
  const bool incoming = side_ == PetalSide::Incoming;
  while (!ch.in_petal(ch.xi + h, side_)) {
    if (++k > opts_.budget) {
      throw NotInBasin("orbit does not enter the " + std::string(incoming ? "incoming" : "outgoing") +
                       " petal within " + std::to_string(opts_.budget) + " steps");
    }
    h = incoming ? ch.map.forward(h) : ch.map.backward(h);
    if (!std::isfinite(static_cast<double>(absx(h))) || absx(ch.xi + h) > escape) {
      throw NotInBasin("orbit escapes");
    }
  }
  const xcplx phi = fatou_raw(ch.map, series_, !incoming, h, opts_) - static_cast<ext>(k);
  return incoming ? phi : -phi;
}

xcplx FatouCoordinate::eval(xcplx z) const { return raw(z) - offset_; }

xcplx FatouCoordinate::inverse(xcplx W) const {
  if (side_ != PetalSide::Outgoing) throw PreconditionViolation("inverse is defined for Phi_- only");
  const LocalSeries& s = series_;
  const xcplx a = s.a, B = s.B(), d = s.d();
  // Phi_- = -Phi_G + const, so Phi_G(h) = -(W + offset).
  const xcplx S = -(W + offset_);
  const ext target = 2 * static_cast<ext>(opts_.deep_modulus);
  const long m = std::max<long>(0, static_cast<long>(std::ceil(static_cast<double>(target - S.real()))));
  const xcplx Sp = S + static_cast<ext>(m);
  xcplx w = Sp;
  for (int it = 0; it < 50; ++it) w = Sp + B * std::log(w) - d / w;
  xcplx h = ext(-1) / (a * w);
  for (int it = 0; it < 12; ++it) {
    const xcplx val = fatou_raw(chart_.map, s, true, h, opts_);
    const xcplx err = val - Sp;
    if (absx(err) < 1e-13L) break;
    const xcplx wv = ext(-1) / (a * h);
    const xcplx deriv = (ext(1) / (a * h * h)) * (ext(1) - B / wv - d / (wv * wv));
    h -= err / deriv;
  }
  for (long k = 0; k < m; ++k) h = chart_.map.forward(h);
  return chart_.xi + h;
}

std::vector<FatouSample> fatou_residual_grid(const FatouCoordinate& fc, int n) {
  const ParabolicChart& ch = fc.chart();
  const ext r = ch.radius(fc.side());
  const xcplx dir = fc.side() == PetalSide::Incoming ? ch.u_in : -ch.u_in;
  const xcplx centre = ch.xi + r * dir;
  std::vector<FatouSample> out;
  for (int i = 1; i <= n; ++i) {
    const ext rho = ext(0.9L) * r * i / n;
    for (int j = 0; j < n; ++j) {
      const ext th = 2 * kPi * (j + ext(0.5L)) / n;
      const xcplx z = centre + rho * xcplx(std::cos(th), std::sin(th));
      xcplx fz = z;
      for (int k = 0; k < ch.q; ++k) fz = fz * fz + ch.c;
      const xcplx phi = fc.eval(z);
      const xcplx res = fc.eval(fz) - phi - ext(1);
      out.push_back({to_cplx(z), to_cplx(phi), static_cast<double>(absx(res))});
    }
  }
  return out;
}

cplx cylinder_project(const FatouCoordinate& incoming, cplx z) {
  if (incoming.side() != PetalSide::Incoming) throw PreconditionViolation("projection uses Phi_+");
  const cplx phi = incoming(z);
  return {phi.real() - std::floor(phi.real()), phi.imag()};
}

}  // namespace renormlab
