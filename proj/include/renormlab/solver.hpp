#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renormlab/core.hpp"
#include "renormlab/germ.hpp"
#include "renormlab/kneading.hpp"
#include "renormlab/shuffle.hpp"

namespace renormlab {

struct CenterOptions {
  int max_period = 64;
  int bisection_steps = 80;
  int newton_steps = 6;
  double residual_tolerance = 1e-12;
};

struct CenterSolve {
  Shuffle sigma;
  ext c = 0;
  double residual = 0;
  Interval bracket;
};

// Superattracting parameter whose critical orbit realizes the shuffle.
CenterSolve center_of_shuffle(const Shuffle& sigma, const CenterOptions& opts = {});

// Center with the given kneading (ending in C) inside [lo, hi], no period cap.
CenterSolve center_of_kneading(const Itinerary& k, ext lo, ext hi,
                               const CenterOptions& opts = {}, bool newton = true);

struct Sigma3Center {
  int n = 0;
  int period = 0;
  ext c = 0;
  double residual = 0;
  std::optional<std::string> error;
};

std::vector<Sigma3Center> centers_sigma3(int n_max, const CenterOptions& opts = {});

struct RootSolve {
  Shuffle sigma;
  ext c = 0;
  ext z = 0;
  int q = 0;
  double cycle_residual = 0;
  double multiplier_residual = 0;
};

// Parabolic parameter at the root of the real copy of the shuffle.
RootSolve root_of_copy(const Shuffle& sigma, const CenterOptions& opts = {});

struct InnerClass {
  Interval bracket;
  int depth_used = 0;
  bool itinerary_undefined = false;
  Itinerary prefix;
};

// Parameters whose kneading agrees with the critical itinerary of the germ to the given depth.
InnerClass inner_class_real(const RenormGerm& germ, int depth);

// Bracket of parameters whose first |prefix| kneading symbols equal the prefix.
Interval kneading_bracket(const Itinerary& prefix, int bisection_steps = 90);

}  // namespace renormlab
