#include "renormlab/parabolic_renorm.hpp"

#include <cmath>
#include <optional>

#include "renormlab/errors.hpp"

namespace renormlab {

namespace {

ext real_iterate(ext c, ext x, int k) {
  for (int i = 0; i < k; ++i) x = x * x + c;
  return x;
}

}  // namespace

ParabolicRenormalization::ParabolicRenormalization(const ParabolicChart& chart,
                                                   const ParabolicRenormOptions& opts)
    : chart_(chart),
      opts_(opts),
      incoming_(chart, PetalSide::Incoming, opts.fatou),
      outgoing_(chart, PetalSide::Outgoing, opts.fatou) {
  if (chart.c.imag() != 0 || chart.xi.imag() != 0 || chart.u_in.imag() != 0) {
    throw PreconditionViolation("parabolic renormalization needs a real chart");
  }
  const ext c = chart.c.real(), xi = chart.xi.real(), dir = -chart.u_in.real();
  const ext extent = static_cast<ext>(opts.ray_extent);
  const int samples = std::max(16, opts.ray_samples);

  std::optional<ext> best_s;
  int best_k = 0;
  for (int k = 1; k <= chart.q; ++k) {
    auto g = [&](ext s) { return real_iterate(c, xi + dir * s, k); };
    ext s_prev = extent / samples, g_prev = g(s_prev);
    for (int i = 2; i <= samples; ++i) {
      const ext s = extent * i / samples, gs = g(s);
      if ((g_prev < 0) != (gs < 0)) {
        ext lo = s_prev, hi = s;
        for (int it = 0; it < 200 && hi - lo > 1e-19L * (1 + hi); ++it) {
          const ext mid = (lo + hi) / 2;
          ((g(lo) < 0) == (g(mid) < 0) ? lo : hi) = mid;
        }
        const ext root = (lo + hi) / 2;
        if (!best_s || root < *best_s) {
          best_s = root;
          best_k = k;
        }
        break;
      }
      s_prev = s;
      g_prev = gs;
    }
  }
  if (!best_s) throw OutsideDomain("no preimage of 0 on the outgoing ray");
  ray_zero_ = xcplx(xi + dir * *best_s, 0);

  xcplx h = ray_zero_ - chart.xi;
  int t = best_k;
  while (!chart.in_petal(chart.xi + h, PetalSide::Outgoing)) {
    h = chart.map.backward(h);
    t += chart.q;
    if (t > opts.max_landing_time) {
      throw OutsideDomain("no landing component inside the outgoing petal with t <= " +
                          std::to_string(opts.max_landing_time));
    }
  }
  landing_time_ = t;
  target_ = chart.xi + h;
  target_phi_ = outgoing_.eval(target_);
  zero_phi_ = incoming_.eval(0);
}

xcplx ParabolicRenormalization::centre_phase() const { return target_phi_ - zero_phi_; }

xcplx ParabolicRenormalization::orbit_phase(cplx c_in) const {
  const xcplx c = to_xcplx(c_in);
  const ext reach = std::abs(target_ - chart_.xi);
  xcplx x = 0;
  bool passed = false;
  for (long n = 0; n <= opts_.basin_budget; ++n) {
    if (chart_.in_petal(x, PetalSide::Incoming)) passed = true;
    if (passed && ((x - chart_.xi) / chart_.u_in).real() < 0 && std::abs(x - chart_.xi) >= reach) {
      const xcplx raw = outgoing_.eval(x) - static_cast<ext>(n) - zero_phi_;
      const xcplx centre = centre_phase();
      return raw - std::round(raw.real() - centre.real());
    }
    for (int i = 0; i < chart_.q; ++i) x = x * x + c;
    if (!std::isfinite(static_cast<double>(std::abs(x)))) throw TransitBudgetExceeded("critical orbit escapes");
  }
  throw TransitBudgetExceeded("critical orbit does not cross the gate");
}

bool ParabolicRenormalization::in_central_basin(xcplx x) const {
  const ext bound = 4 * std::abs(chart_.xi);
  xcplx h = x - chart_.xi;
  for (long k = 0; k <= opts_.basin_budget; ++k) {
    if (chart_.in_petal(chart_.xi + h, PetalSide::Incoming)) return true;
    if (!(std::abs(chart_.xi + h) <= bound)) return false;
    h = chart_.map.forward(h);
  }
  return false;
}

xcplx ParabolicRenormalization::eval(xcplx phase, xcplx z) const {
  xcplx W;
  try {
    W = incoming_.eval(z) + phase;
  } catch (const NotInBasin& e) {
    throw OutsideDomain(std::string("z is not in the incoming basin (") + e.what() + ")");
  }
  const ext shift = std::round((target_phi_ - W).real());
  xcplx y = outgoing_.inverse(W + shift);
  for (int i = 0; i < landing_time_; ++i) {
    y = y * y + chart_.c;
    if (!std::isfinite(static_cast<double>(std::abs(y)))) throw LandingFailure("image escapes");
  }
  if (!in_central_basin(y)) throw LandingFailure("image does not land in the central basin");
  return y;
}

}  // namespace renormlab
