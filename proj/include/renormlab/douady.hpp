#pragma once

#include <vector>

#include "renormlab/parabolic.hpp"

namespace renormlab {

struct DouadyOptions {
  long transit_budget = 10000000;
  // Floor of the gate radius in units of 1/|a|; widened to 4 max|xi_f|, capped at 3/(8|a|).
  double gate_scale = 0.001;
};

// Perturbed Fatou coordinates of f_c near the parabolic cycle of a base chart.
// Phi_f is modelled near the gate by the time of the vector field g = F - id,
//   Phi_model(h) = sum_j log(h - r_j) / g'(r_j) + (1/2) log g(h),
// and a_f is solved from f^n(z_+) = phi_f(a_f + n) with anchors z_+- of the base chart.
struct DouadyChart {
  ParabolicChart base;
  xcplx c;
  DeviationMap map;
  std::vector<xcplx> roots;  // all fixed points of F in deviation coordinates
  std::vector<xcplx> root_derivatives;  // g'(r_j)
  xcplx xi_f, xi_f2;  // the two fixed points born from the parabolic point
  xcplx lambda, lambda2;
  xcplx z_plus, z_minus;
  ext gate_radius = 0;
  long transit_steps = 0;  // n in f^n(z_+) = phi_f(a_f + n)
  long backward_steps = 0;
  xcplx a_f;

  double transit_time() const { return -static_cast<double>(a_f.real()); }
  cplx phase() const;
  xcplx model(xcplx h) const;
  // Phi_model(h1) - Phi_model(h0) with each logarithm continued along the short path.
  xcplx model_difference(xcplx h1, xcplx h0) const;
  // Phi_model(F(h)) - Phi_model(h) - 1.
  xcplx model_residual(xcplx h) const;
};

bool gate_open(xcplx lambda);

DouadyChart douady_chart(const ParabolicChart& base, cplx c, const DouadyOptions& opts = {});
DouadyChart douady_chart(cplx c, int q, cplx c0, const DouadyOptions& opts = {});

// 1/(1 - lambda) + 1/(1 - lambda'); tends to b/a^2 = 1 - B as c approaches the base.
xcplx holomorphic_index(const DouadyChart& chart);

struct Converge1Row {
  long n = 0;
  double epsilon = 0;
  cplx a_f;
  double defect = 0;
};

struct Converge1Report {
  double target_phase = 0;
  double compare_phase = 0;
  std::vector<Converge1Row> rows;
};

// Along c = c0 + eps_k (eps_k > 0) tuned so that Re a_f = target - n_k, measures
// max |f^{n_k}(z) - phi_-(Phi_+(z) + compare)| on a 5x5 grid around z_+.
// compare defaults to the target phase; an offset gives the negative control.
Converge1Report converge1_check(const ParabolicChart& base, double target_phase,
                                const std::vector<long>& steps, double compare_phase,
                                const DouadyOptions& opts = {});

// Defect at the parabolic parameter itself: max |Phi_+(f^n(z)) - Phi_+(z) - n| on the grid.
double converge1_self_defect(const ParabolicChart& base, long n);

}  // namespace renormlab
