#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renormlab/core.hpp"
#include "renormlab/germ.hpp"
#include "renormlab/kneading.hpp"
#include "renormlab/solver.hpp"

namespace renormlab {

constexpr int kMaxRenormPeriod = 64;

// Minimal period n > 1 with a maximal periodic interval J = [-b, b] on which g^n
// is unimodal, or nullopt.
std::optional<RenormStage> detect_renormalizable(const RenormGerm& g,
                                                 int max_period = kMaxRenormPeriod);

RenormGerm renormalize(const RenormGerm& g, int max_period = kMaxRenormPeriod);

struct RenormDiagnostics {
  int stage = 0;
  int period = 0;  // period of the stage that produced this germ; 0 for the base map
  Itinerary kneading_prefix;
  ext critical_value = 0;
  ext alpha = 0;  // non-dividing fixed point, in germ coordinates
  ext beta = 0;
  InnerClass inner;
  ext base_half_width = 0;
};

constexpr int kDiagnosticDepth = 48;

RenormDiagnostics diagnose(const RenormGerm& g, int stage);

// Diagnostics of R^1(f_c), ..., R^k(f_c).
std::vector<RenormDiagnostics> renorm_orbit(ext c, int k, int max_period = kMaxRenormPeriod);

struct MapBranch {
  Interval domain;
  int time = 0;  // number of applications of g making up the branch
  int sign = 1;  // +1 increasing, -1 decreasing, 0 when the branch contains a critical point
  Itinerary itinerary;  // sides of x, g(x), ..., g^{time-1}(x)
};

struct PiecewiseMap {
  std::vector<MapBranch> branches;
  const MapBranch* branch_at(ext x) const;
};

struct BranchOptions {
  int samples = 4097;
  int landing_budget = 20000;
  int refine_steps = 64;
};

// First return of U to itself: time r(x) = min{k >= 1 : g^k(x) in U}.
PiecewiseMap first_return_map(const RenormGerm& g, const Interval& u, const BranchOptions& opts = {});

// T = g o L on the domain, where L is the first landing (time >= 0) into the
// union of the target intervals. Branch times include the extra application.
PiecewiseMap first_through_map(const RenormGerm& g, const Interval& domain,
                               const std::vector<Interval>& targets, const BranchOptions& opts = {});

// Experiment: renormalization orbit of the center of the tuning
// sigma3_{n_1} * sigma3_{n_2} * ... compared against f_{-1.75}.
struct Per3Config {
  std::vector<int> tuning;
  int stages = 0;
  double delta = 0.02;
};

enum class Per3Verdict { Pass, Fail, Inconclusive, NoVerdict };
std::string to_string(Per3Verdict v);

struct Per3Row {
  int stage = 0;
  int period = 0;
  Interval bracket;
  ext midpoint = 0;
  int agreement = 0;
  bool itinerary_undefined = false;
};

struct Per3Report {
  std::vector<int> tuning;
  long period = 0;
  ext c = 0;
  double residual = 0;
  std::vector<Per3Row> rows;
  Per3Verdict verdict = Per3Verdict::NoVerdict;
  std::string message;
};

Per3Report run_per3(const Per3Config& cfg);

}  // namespace renormlab
