#pragma once

#include "renormlab/parabolic.hpp"

namespace renormlab {

struct ParabolicRenormOptions {
  int max_landing_time = 20;
  double ray_extent = 1.5;  // scan length of the outgoing real ray, from xi
  int ray_samples = 3000;
  long basin_budget = 100000;
  FatouOptions fatou;
};

// R_a = f^t o phi_- o T_a o Phi_+ for a real parabolic chart. U_- is the preimage
// component of the central basin B met first along the outgoing real ray, pulled
// back by the local inverse into the outgoing petal; t is its landing time.
class ParabolicRenormalization {
 public:
  explicit ParabolicRenormalization(const ParabolicChart& chart, const ParabolicRenormOptions& opts = {});

  const ParabolicChart& chart() const { return chart_; }
  int landing_time() const { return landing_time_; }
  xcplx ray_zero() const { return ray_zero_; }  // first zero of f^k on the outgoing ray
  xcplx target() const { return target_; }      // y* in U_- with f^t(y*) = 0
  // The phase for which R_a(0) = 0.
  xcplx centre_phase() const;

  // Throws OutsideDomain when z is not in the incoming basin and LandingFailure
  // when the image does not land in B.
  xcplx eval(xcplx phase, xcplx z) const;
  cplx operator()(cplx phase, cplx z) const { return to_cplx(eval(to_xcplx(phase), to_xcplx(z))); }

  // Phase of a nearby map f_c read off the critical orbit: with N the first count
  // after which f_c^{qN}(0) has visited the incoming petal and then crossed to the
  // outgoing side of xi, Phi_-(f_c^{qN}(0)) - N - Phi_+(0), shifted by an integer
  // to the lift nearest centre_phase().
  xcplx orbit_phase(cplx c) const;

  // The F-orbit of x enters the incoming petal without leaving D(0, 4|xi|).
  bool in_central_basin(xcplx x) const;

 private:
  ParabolicChart chart_;
  ParabolicRenormOptions opts_;
  FatouCoordinate incoming_;
  FatouCoordinate outgoing_;
  int landing_time_ = 0;
  xcplx ray_zero_;
  xcplx target_;
  xcplx target_phi_;
  xcplx zero_phi_;
};

}  // namespace renormlab
