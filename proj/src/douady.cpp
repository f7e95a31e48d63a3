#include "renormlab/douady.hpp"

#include <algorithm>
#include <cmath>

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

constexpr ext kPi = 3.141592653589793238462643383279502884L;

ext absx(xcplx z) { return std::abs(z); }

// Ascending coefficients of F(h) - h for the deviation map.
std::vector<xcplx> displacement_polynomial(const DeviationMap& map) {
  std::vector<xcplx> p{0, 1};
  for (int k = 0; k < map.q(); ++k) {
    const xcplx xi = map.cycle[static_cast<std::size_t>(k)];
    std::vector<xcplx> out(p.size() * 2 - 1, xcplx(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      out[i] += ext(2) * xi * p[i];
      for (std::size_t j = 0; j < p.size(); ++j) out[i + j] += p[i] * p[j];
    }
    out[0] += map.residual[static_cast<std::size_t>(k)] + map.delta;
    p = std::move(out);
  }
  p[1] -= ext(1);
  return p;
}

xcplx polish_fixed_point(const DeviationMap& map, xcplx h) {
  for (int it = 0; it < 40; ++it) {
    const auto [v, d] = map.forward_d(h);
    const xcplx g = v - h, gp = d - ext(1);
    if (gp == xcplx(0)) break;
    const xcplx step = g / gp;
    h -= step;
    if (absx(step) <= 1e-19L * (1 + absx(h))) break;
  }
  return h;
}

std::vector<xcplx> grid_near(xcplx centre) {
  std::vector<xcplx> pts;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      pts.push_back(centre + xcplx(ext(0.05L) * (i - 2), ext(0.05L) * (j - 2)));
    }
  }
  return pts;
}

xcplx iterate_family(xcplx c, xcplx z, long steps) {
  for (long k = 0; k < steps; ++k) z = z * z + c;
  return z;
}

}  // namespace

cplx DouadyChart::phase() const {
  const double re = static_cast<double>(a_f.real());
  return {re - std::floor(re), static_cast<double>(a_f.imag())};
}

xcplx DouadyChart::model(xcplx h) const {
  xcplx s = 0;
  for (std::size_t j = 0; j < roots.size(); ++j) s += std::log(h - roots[j]) / root_derivatives[j];
  return s + std::log(map.forward(h) - h) / ext(2);
}

xcplx DouadyChart::model_difference(xcplx h1, xcplx h0) const {
  xcplx s = 0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    s += std::log((h1 - roots[j]) / (h0 - roots[j])) / root_derivatives[j];
  }
  return s + std::log((map.forward(h1) - h1) / (map.forward(h0) - h0)) / ext(2);
}

xcplx DouadyChart::model_residual(xcplx h) const {
  return model_difference(map.forward(h), h) - ext(1);
}

bool gate_open(xcplx lambda) {
  const ext arg = std::abs(std::arg(ext(1) - lambda));
  return arg >= kPi / 4 && arg <= 3 * kPi / 4;
}

DouadyChart douady_chart(const ParabolicChart& base, cplx c_in, const DouadyOptions& opts) {
  DouadyChart ch;
  ch.base = base;
  ch.c = to_xcplx(c_in);
  ch.map = base.map.perturbed(ch.c);
  if (ch.map.delta == xcplx(0)) throw GateClosed("parameter equals the parabolic parameter");

  ch.roots = polynomial_roots(displacement_polynomial(ch.map));
  for (xcplx& r : ch.roots) r = polish_fixed_point(ch.map, r);
  std::sort(ch.roots.begin(), ch.roots.end(), [](const xcplx& x, const xcplx& y) { return absx(x) < absx(y); });
  for (const xcplx& r : ch.roots) ch.root_derivatives.push_back(ch.map.forward_d(r).second - ext(1));

  xcplx x0 = ch.roots[0], x1 = ch.roots[1];
  if (x1.imag() > x0.imag()) std::swap(x0, x1);
  ch.xi_f = x0;
  ch.xi_f2 = x1;
  ch.lambda = ch.map.forward_d(x0).second;
  ch.lambda2 = ch.map.forward_d(x1).second;
  if (!gate_open(ch.lambda) || !gate_open(ch.lambda2)) {
    throw GateClosed("arg(1 - lambda) = " + std::to_string(static_cast<double>(std::arg(ext(1) - ch.lambda))) +
                     ", arg(1 - lambda') = " + std::to_string(static_cast<double>(std::arg(ext(1) - ch.lambda2))));
  }

  ch.z_plus = base.anchor(PetalSide::Incoming);
  ch.z_minus = base.anchor(PetalSide::Outgoing);
  const ext inv_a = 1 / absx(base.a);
  ch.gate_radius = std::min(std::max(static_cast<ext>(opts.gate_scale) * inv_a,
                                     4 * std::max(absx(ch.xi_f), absx(ch.xi_f2))),
                            inv_a * 3 / 8);

  xcplx p_out = ch.z_minus - base.xi;
  long m = 0;
  while (absx(p_out) > ch.gate_radius) {
    if (++m > opts.transit_budget) throw TransitBudgetExceeded("backward orbit of z_- never reaches the gate");
    p_out = ch.map.backward(p_out);
    if ((p_out / base.u_in).real() > 0) throw GateClosed("gate is wider than the model region");
  }

  xcplx h = ch.z_plus - base.xi;
  long n = 0;
  bool entered = false;
  const ext out_radius = absx(p_out);
  for (;;) {
    if (++n > opts.transit_budget) throw TransitBudgetExceeded("orbit of z_+ does not cross the gate");
    h = ch.map.forward(h);
    if (!std::isfinite(static_cast<double>(absx(h)))) throw TransitBudgetExceeded("orbit of z_+ escapes");
    if (absx(h) <= ch.gate_radius) entered = true;
    if ((h / base.u_in).real() < 0 && absx(h) >= out_radius) {
      if (!entered) throw GateClosed("orbit of z_+ passes the gate outside the model region");
      break;
    }
  }
  ch.backward_steps = m;
  ch.transit_steps = n;
  ch.a_f = ch.model_difference(h, p_out) - static_cast<ext>(m) - static_cast<ext>(n);
  return ch;
}

DouadyChart douady_chart(cplx c, int q, cplx c0, const DouadyOptions& opts) {
  return douady_chart(detect_parabolic(c0, q), c, opts);
}

xcplx holomorphic_index(const DouadyChart& chart) {
  return ext(1) / (ext(1) - chart.lambda) + ext(1) / (ext(1) - chart.lambda2);
}

Converge1Report converge1_check(const ParabolicChart& base, double target_phase,
                                const std::vector<long>& steps, double compare_phase,
                                const DouadyOptions& opts) {
  if (base.c.imag() != 0) throw PreconditionViolation("converge1 runs along a real family");
  Converge1Report rep;
  rep.target_phase = target_phase;
  rep.compare_phase = compare_phase;
  const FatouCoordinate in(base, PetalSide::Incoming);
  const FatouCoordinate out(base, PetalSide::Outgoing);
  const auto grid = grid_near(base.anchor(PetalSide::Incoming));
  std::vector<xcplx> lifted;
  for (const xcplx& z : grid) {
    lifted.push_back(out.inverse(in.eval(z) + static_cast<ext>(compare_phase)));
  }

  for (long N : steps) {
    const ext target = static_cast<ext>(target_phase) - static_cast<ext>(N);
    auto residual = [&](ext s, DouadyChart* keep) {
      const ext eps = 1 / (s * s);
      DouadyChart dc = douady_chart(base, to_cplx(base.c + eps), opts);
      if (keep) *keep = dc;
      return dc.a_f.real() - target;
    };
    ext s0 = static_cast<ext>(N) / kPi, s1 = s0 * 1.01L;
    ext r0 = residual(s0, nullptr), r1 = residual(s1, nullptr);
    for (int it = 0; it < 40 && std::abs(r1) > 1e-9L && r1 != r0; ++it) {
      const ext s2 = s1 - r1 * (s1 - s0) / (r1 - r0);
      s0 = s1;
      r0 = r1;
      s1 = s2 > 0 ? s2 : s1 / 2;
      r1 = residual(s1, nullptr);
    }
    DouadyChart dc;
    residual(s1, &dc);
    Converge1Row row;
    row.n = N;
    row.epsilon = static_cast<double>(1 / (s1 * s1));
    row.a_f = to_cplx(dc.a_f);
    double worst = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const xcplx img = iterate_family(dc.c, grid[i], N * base.q);
      worst = std::max(worst, static_cast<double>(absx(img - lifted[i])));
    }
    row.defect = worst;
    rep.rows.push_back(row);
  }
  return rep;
}

double converge1_self_defect(const ParabolicChart& base, long n) {
  const FatouCoordinate in(base, PetalSide::Incoming);
  double worst = 0;
  for (const xcplx& z : grid_near(base.anchor(PetalSide::Incoming))) {
    const xcplx img = iterate_family(base.c, z, n * base.q);
    const xcplx d = in.eval(img) - in.eval(z) - static_cast<ext>(n);
    worst = std::max(worst, static_cast<double>(absx(d)));
  }
  return worst;
}

}  // namespace renormlab
