#pragma once

#include <complex>
#include <vector>

#include "renormlab/core.hpp"

namespace renormlab {

using xcplx = std::complex<ext>;

inline cplx to_cplx(xcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }
inline xcplx to_xcplx(cplx z) { return {z.real(), z.imag()}; }

// f_c^q written in deviation coordinates h = z - xi_k around a reference q-cycle
// xi_0, ..., xi_{q-1} of f_{c0}. The map may be perturbed: c = c0 + delta.
struct DeviationMap {
  std::vector<xcplx> cycle;
  std::vector<xcplx> residual;  // xi_k^2 + c0 - xi_{k+1}
  xcplx c0;
  xcplx delta;

  DeviationMap() = default;
  DeviationMap(std::vector<xcplx> cycle, xcplx c0, xcplx delta = 0);
  int q() const { return static_cast<int>(cycle.size()); }
  xcplx c() const { return c0 + delta; }
  xcplx forward(xcplx h) const;
  // Value and derivative.
  std::pair<xcplx, xcplx> forward_d(xcplx h) const;
  // Local inverse branch following the reference cycle backward.
  xcplx backward(xcplx h) const;
  DeviationMap perturbed(xcplx c) const;
};

// Taylor coefficients of F(h) = h + a h^2 + b h^3 + e h^4 + ... at h = 0 (beyond
// the multiplier), and the constants of the normal form.
struct LocalSeries {
  xcplx multiplier = 1;
  xcplx a, b, e;
  // w = -1/(a h) satisfies w -> w + 1 + B/w + ...; B = 1 - b/a^2.
  xcplx B() const;
  // Coefficient of 1/w in the asymptotic Fatou coordinate w - B log w + d/w.
  xcplx d() const;
  // Series of the inverse map.
  LocalSeries inverse() const;
};

LocalSeries local_series(const DeviationMap& map);

enum class PetalSide { Incoming, Outgoing };

struct ParabolicChart {
  xcplx c;
  int q = 0;
  xcplx xi;  // cycle point closest to the critical point
  std::vector<xcplx> cycle;
  xcplx multiplier;
  LocalSeries series;
  xcplx a, b, B;
  xcplx u_in;  // unit attracting direction at xi
  double petal_radius = 0;  // incoming
  double petal_radius_out = 0;
  DeviationMap map;

  // Petal disks tangent at xi: center xi +- r u_in, radius r of that side.
  double radius(PetalSide side) const { return side == PetalSide::Incoming ? petal_radius : petal_radius_out; }
  bool in_petal(xcplx z, PetalSide side) const;
  xcplx anchor(PetalSide side) const;  // xi +- u_in / (2 |a|)
};

ParabolicChart detect_parabolic(cplx c, int q);

// Parabolic parameter of period q near c: Newton on f^q(z) = z, (f^q)'(z) = 1
// in (z, c), seeded by the q-cycle of f_c whose multiplier is closest to 1.
cplx nearest_parabolic_parameter(cplx c, int q);

struct FatouOptions {
  long budget = 100000;
  double deep_modulus = 1000;
  double tolerance = 1e-10;
};

// Incoming Phi_+ or outgoing Phi_- with Phi(f^q(z)) = Phi(z) + 1 and Phi(anchor) = 0.
class FatouCoordinate {
 public:
  FatouCoordinate(const ParabolicChart& chart, PetalSide side, const FatouOptions& opts = {});
  FatouCoordinate(const ParabolicChart& chart, PetalSide side, xcplx anchor,
                  const FatouOptions& opts = {});

  const ParabolicChart& chart() const { return chart_; }
  PetalSide side() const { return side_; }
  xcplx anchor() const { return anchor_; }

  // Incoming: any z in the basin whose f^q-orbit enters the incoming petal.
  // Outgoing: z whose backward orbit under the local inverse enters the outgoing petal.
  xcplx eval(xcplx z) const;
  cplx operator()(cplx z) const { return to_cplx(eval(to_xcplx(z))); }
  // Outgoing only: phi_- = Phi_-^{-1}.
  xcplx inverse(xcplx w) const;

 private:
  xcplx raw(xcplx z) const;
  ParabolicChart chart_;
  PetalSide side_;
  xcplx anchor_;
  FatouOptions opts_;
  LocalSeries series_;  // of F (incoming) or F^{-1} (outgoing)
  xcplx offset_ = 0;
};

// Raw incoming Fatou coordinate of a local map with the given series at a
// deviation h, iterating step(h) until deep. Exposed for tests.
xcplx fatou_raw(const DeviationMap& map, const LocalSeries& s, bool inverse_branch, xcplx h,
                const FatouOptions& opts);

// Roots of sum_k coeffs[k] z^k (Durand-Kerner, then Newton polish).
std::vector<xcplx> polynomial_roots(const std::vector<xcplx>& coeffs);

// Phi_+(z) mod 1, the real part reduced to [0, 1).
cplx cylinder_project(const FatouCoordinate& incoming, cplx z);

struct FatouSample {
  cplx z;
  cplx phi;
  double residual = 0;  // |Phi(f^q(z)) - Phi(z) - 1|
};

// n x n polar grid in the petal disk of the coordinate's side, radii in (0, 0.9r].
std::vector<FatouSample> fatou_residual_grid(const FatouCoordinate& fc, int n = 20);

}  // namespace renormlab
