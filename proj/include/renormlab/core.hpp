#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace renormlab {

using cplx = std::complex<double>;

// Extended real type used wherever double cannot hold the required residuals
// (deep superattracting centers, rescaled germs). On x86-64 this is the 80-bit
// x87 format with a 64-bit mantissa.
using ext = long double;

struct Interval {
  ext lo = 0;
  ext hi = 0;
  ext width() const { return hi - lo; }
  ext mid() const { return (lo + hi) / 2; }
  bool contains(ext x) const { return lo <= x && x <= hi; }
  bool contains_open(ext x) const { return lo < x && x < hi; }
};

class QuadParam {
 public:
  QuadParam(cplx c);  // NOLINT(google-explicit-constructor): parameters read naturally as numbers
  QuadParam(double c) : QuadParam(cplx(c, 0.0)) {}
  cplx c() const { return c_; }
  bool is_real() const { return c_.imag() == 0.0; }

 private:
  cplx c_;
};

struct SolverOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;
};

struct FixedPointData {
  cplx alpha;
  cplx beta;
  cplx lambda_alpha;
  cplx lambda_beta;
};

struct Orbit {
  cplx start;
  std::vector<cplx> points;
  bool escaped = false;
  std::optional<std::size_t> escape_index;
};

struct PeriodicOrbit {
  std::vector<cplx> points;
  cplx multiplier;
  double residual = 0;
};

struct RealIntervals {
  Interval B;
  Interval A;
};

inline cplx quad(cplx c, cplx z) { return z * z + c; }
inline ext quad(ext c, ext x) { return x * x + c; }

Orbit iterate(const QuadParam& c, cplx z0, std::size_t n, double escape_radius = 2.0);

FixedPointData fixed_points(const QuadParam& c);

// Value, first and second derivative of f_c^n at z.
struct Jet2 {
  cplx value;
  cplx d1;
  cplx d2;
};
Jet2 iterate_jet(cplx c, cplx z, int n);

PeriodicOrbit periodic_orbit(const QuadParam& c, int period, cplx seed,
                             const SolverOptions& opts = {});

RealIntervals real_intervals(const QuadParam& c);

// Fixed points for real c <= 1/4 in extended precision; beta >= 0 >= alpha for c <= 0.
struct RealFixedPoints {
  ext alpha;
  ext beta;
};
RealFixedPoints real_fixed_points(ext c);

}  // namespace renormlab
