#include "renormlab/core.hpp"

#include <cmath>
#include <string>

#include "renormlab/errors.hpp"

namespace renormlab {

QuadParam::QuadParam(cplx c) : c_(c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw PreconditionViolation("QuadParam must be finite");
  }
}

Orbit iterate(const QuadParam& param, cplx z0, std::size_t n, double escape_radius) {
  if (escape_radius < 2.0) throw PreconditionViolation("escape radius must be at least 2");
  const cplx c = param.c();
  Orbit orbit;
  orbit.start = z0;
  orbit.points.reserve(n + 1);
  orbit.points.push_back(z0);
  const double r2 = escape_radius * escape_radius;
  cplx z = z0;
  if (std::norm(z) > r2) {
    orbit.escaped = true;
    orbit.escape_index = 0;
    return orbit;
  }
  for (std::size_t k = 1; k <= n; ++k) {
    z = quad(c, z);
    orbit.points.push_back(z);
    if (std::norm(z) > r2) {
      orbit.escaped = true;
      orbit.escape_index = k;
      break;
    }
  }
  return orbit;
}

FixedPointData fixed_points(const QuadParam& param) {
  const cplx c = param.c();
  // Roots of z^2 - z + c: z1 from the stable branch, z2 from Vieta.
  const cplx s = std::sqrt(cplx(1.0, 0.0) - 4.0 * c);
  cplx z1 = (1.0 + s) / 2.0;
  cplx z2 = (std::abs(z1) > 0.0) ? c / z1 : (1.0 - s) / 2.0;
  // The repelling side: larger |2z|, ties by larger real part.
  const double m1 = std::abs(z1), m2 = std::abs(z2);
  bool first_is_beta = m1 > m2 || (m1 == m2 && z1.real() >= z2.real());
  FixedPointData out;
  out.beta = first_is_beta ? z1 : z2;
  out.alpha = first_is_beta ? z2 : z1;
  out.lambda_alpha = 2.0 * out.alpha;
  out.lambda_beta = 2.0 * out.beta;
  return out;
}

Jet2 iterate_jet(cplx c, cplx z, int n) {
  cplx d1 = 1.0, d2 = 0.0;
  for (int k = 0; k < n; ++k) {
    d2 = 2.0 * (d1 * d1 + z * d2);
    d1 = 2.0 * z * d1;
    z = z * z + c;
  }
  return {z, d1, d2};
}

namespace {

double cycle_residual(cplx c, cplx z, int period) {
  const Jet2 j = iterate_jet(c, z, period);
  return std::abs(j.value - z);
}

}  // namespace

PeriodicOrbit periodic_orbit(const QuadParam& param, int period, cplx seed,
                             const SolverOptions& opts) {
  if (period < 1) throw PreconditionViolation("period must be at least 1");
  const cplx c = param.c();
  cplx z = seed;
  double best_res = cycle_residual(c, z, period);
  cplx best = z;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Jet2 j = iterate_jet(c, z, period);
    const cplx g = j.value - z;
    const cplx dg = j.d1 - 1.0;
    if (dg == 0.0) break;
    const cplx step = g / dg;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) break;
    const double res = cycle_residual(c, z, period);
    if (res < best_res || (res == best_res && std::abs(step) > 0)) {
      best_res = res;
      best = z;
    }
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
  }
  z = best;
  // Double roots (parabolic cycles) only resolve to about sqrt(eps) through the
  // cycle equation; the multiplier equation pins them to full precision.
  {
    const Jet2 j = iterate_jet(c, z, period);
    if (std::abs(j.d1 - 1.0) < 1e-3) {
      cplx w = z;
      for (int it = 0; it < 60; ++it) {
        const Jet2 jw = iterate_jet(c, w, period);
        if (jw.d2 == 0.0) break;
        const cplx step = (jw.d1 - 1.0) / jw.d2;
        w -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
      }
      const double res = cycle_residual(c, w, period);
      if (std::isfinite(res) && res <= opts.tolerance * (1.0 + std::norm(w)) &&
          std::abs(w - z) < 1e-6) {
        z = w;
        best_res = res;
      }
    }
  }
  if (!(best_res <= opts.tolerance * (1.0 + std::norm(z)))) {
    throw NoConvergence("periodic_orbit: residual " + std::to_string(best_res) + " after " +
                        std::to_string(opts.max_iterations) + " iterations");
  }
  PeriodicOrbit out;
  out.points.reserve(static_cast<std::size_t>(period));
  cplx multiplier = 1.0;
  cplx w = z;
  for (int k = 0; k < period; ++k) {
    out.points.push_back(w);
    multiplier *= 2.0 * w;
    w = quad(c, w);
  }
  out.multiplier = multiplier;
  out.residual = best_res;
  return out;
}

RealFixedPoints real_fixed_points(ext c) {
  if (c > 0.25L || c < -2.0L) throw OutOfFamily("real c must lie in [-2, 1/4]");
  const ext s = std::sqrt(std::max<ext>(0, 1 - 4 * c));
  const ext beta = (1 + s) / 2;
  const ext alpha = (beta != 0) ? c / beta : (1 - s) / 2;
  return {alpha, beta};
}

RealIntervals real_intervals(const QuadParam& param) {
  if (!param.is_real()) throw OutOfFamily("real_intervals requires a real parameter");
  const double c = param.c().real();
  const RealFixedPoints fp = real_fixed_points(c);
  RealIntervals out;
  out.B = {-fp.beta, fp.beta};
  out.A = {std::min(fp.alpha, -fp.alpha), std::max(fp.alpha, -fp.alpha)};
  return out;
}

}  // namespace renormlab
