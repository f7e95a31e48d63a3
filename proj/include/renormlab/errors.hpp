#pragma once

#include <stdexcept>
#include <string>

namespace renormlab {

// Base of every failure raised by the library. The CLI maps these to exit code 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Caller broke a documented precondition.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

#define RENORMLAB_ERROR(Name)                           \
  class Name : public Error {                           \
   public:                                              \
    explicit Name(const std::string& w) : Error(#Name ": " + w) {} \
  }

RENORMLAB_ERROR(NoConvergence);
RENORMLAB_ERROR(OutOfFamily);

RENORMLAB_ERROR(NotABijection);
RENORMLAB_ERROR(NotACycle);
RENORMLAB_ERROR(NotUnimodal);
RENORMLAB_ERROR(NotSuperattracting);
RENORMLAB_ERROR(OrbitCollision);
RENORMLAB_ERROR(ParseError);

RENORMLAB_ERROR(SolverFailure);
RENORMLAB_ERROR(NoBracket);
RENORMLAB_ERROR(NewtonDivergence);

RENORMLAB_ERROR(ImmediatelyRenormalizable);
RENORMLAB_ERROR(LevelBudgetExceeded);
RENORMLAB_ERROR(AdmissibilityViolation);
RENORMLAB_ERROR(NotNeglectable);
RENORMLAB_ERROR(NotInsertable);

RENORMLAB_ERROR(LandingBudgetExceeded);

RENORMLAB_ERROR(NotParabolic);
RENORMLAB_ERROR(DegenerateParabolic);
RENORMLAB_ERROR(NotInBasin);
RENORMLAB_ERROR(GateClosed);
RENORMLAB_ERROR(TransitBudgetExceeded);
RENORMLAB_ERROR(OutsideDomain);
RENORMLAB_ERROR(LandingFailure);

RENORMLAB_ERROR(IOError);

#undef RENORMLAB_ERROR

class Renormalizable : public Error {
 public:
  Renormalizable(int block_size, int blocks)
      : Error("Renormalizable: blocks of " + std::to_string(block_size) +
              " consecutive indices are permuted block-wise (" + std::to_string(blocks) +
              " blocks)"),
        block_size(block_size),
        blocks(blocks) {}
  int block_size;
  int blocks;
};

class NotRenormalizable : public Error {
 public:
  explicit NotRenormalizable(int stage)
      : Error("NotRenormalizable: no renormalization found at stage " + std::to_string(stage)),
        stage(stage) {}
  int stage;
};

class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(int stage, const std::string& detail)
      : Error("PrecisionExhausted at stage " + std::to_string(stage) + ": " + detail),
        stage(stage) {}
  int stage;
};

class SlowConvergence : public Error {
 public:
  SlowConvergence(double tail, long iterations)
      : Error("SlowConvergence: tail estimate " + std::to_string(tail) + " after " +
              std::to_string(iterations) + " iterations"),
        tail(tail),
        iterations(iterations) {}
  double tail;
  long iterations;
};

}  // namespace renormlab
