#pragma once

#include <string>
#include <vector>

#include "neutro/funcspec.hpp"
#include "neutro/limits.hpp"
#include "neutro/realset.hpp"

namespace neutro {

struct ContinuityClass {
  enum class Kind { Continuous, MereoContinuous, Discontinuous };
  Kind kind = Kind::Discontinuous;
  /// L ∩ R ∩ f(c) for MereoContinuous, f(c) for Continuous.
  RealSet witness;
  std::string reason;
};

ContinuityClass classify_at(const FuncSpec& f, double c, const LimitConfig& cfg = {});

/// Leftmost c in [a,b] with k in f(c), scanning `grid` cells and refining by
/// bisection.  OutOfRange when k lies outside the endpoint value range,
/// NotFound when no witness turns up at this resolution.
double ivt_find(const FuncSpec& f, double a, double b, double k, int grid = 1024);

/// Ascending points whose values together cover [k1,k2], chosen greedily.
std::vector<double> ivt_cover(const FuncSpec& f, double a, double b, double k1, double k2,
                              int grid = 1024);

enum class ClosureOp { Add, Sub, Mul, Div, Scale };

/// Whether f (op) g, or alpha*f for Scale, is still at least mereo-continuous
/// at c.  PreconditionError unless both inputs are.
bool check_closure(const FuncSpec& f, const FuncSpec& g, double c, ClosureOp op,
                   double alpha = 1.0, const LimitConfig& cfg = {});

/// "continuous", "mereo-continuous, witness [8,9]", "discontinuous (...)".
std::string to_string(const ContinuityClass& c);

}  // namespace neutro
