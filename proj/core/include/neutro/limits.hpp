#pragma once

#include <string>
#include <vector>

#include "neutro/expr.hpp"
#include "neutro/funcspec.hpp"
#include "neutro/realset.hpp"

namespace neutro {

struct LimitConfig {
  double h0 = 0.1;
  double ratio = 0.5;
  double tol = 1e-6;
  int max_steps = 60;
  double blowup = 1e9;

  /// Throws PreconditionError unless every field is in range.
  void validate() const;
};

enum class Side { Left, Right };

class LimitOutcome {
 public:
  enum class Kind { Finite, PlusInfinity, MinusInfinity, DoesNotExist };

  static LimitOutcome finite(RealSet value);
  static LimitOutcome plus_infinity() { return LimitOutcome(Kind::PlusInfinity); }
  static LimitOutcome minus_infinity() { return LimitOutcome(Kind::MinusInfinity); }
  static LimitOutcome does_not_exist(std::string reason);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  /// The limit set; throws PreconditionError unless finite.
  [[nodiscard]] const RealSet& value() const;
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

  friend bool operator==(const LimitOutcome&, const LimitOutcome&) = default;

 private:
  explicit LimitOutcome(Kind k) : kind_(k) {}
  Kind kind_;
  RealSet value_;
  std::string reason_;
};

/// eta(a,b) <= tol, with a few ulps of slack so that two limits rounded to
/// the tolerance's decimals on either side of a tie still agree.
bool within_tol(const RealSet& a, const RealSet& b, double tol);

/// One outcome per value branch, in branch order.
std::vector<LimitOutcome> branch_limits(const FuncSpec& f, double c, Side side,
                                        const LimitConfig& cfg = {});
/// Branch limits merged: DoesNotExist when the branches disagree.
LimitOutcome directional_limit(const FuncSpec& f, double c, Side side, const LimitConfig& cfg = {});
/// Intersection of the left and right limits.
LimitOutcome mereo_limit(const FuncSpec& f, double c, const LimitConfig& cfg = {});
/// Finite only when the left and right limits agree within tol.
LimitOutcome full_limit(const FuncSpec& f, double c, const LimitConfig& cfg = {});
/// Limit of a template whose interval coefficients are all driven by the
/// parameter alpha in [p,q]: crisp limits at p, q and the midpoint, reported
/// as their hull.  NonMonotoneParameter when the midpoint leaves the hull.
LimitOutcome interval_param_limit(const Expr& templ, double p, double q, double c,
                                  const LimitConfig& cfg = {});

/// "[8,11]", "+inf", "-inf", "does not exist: <reason>".
std::string to_string(const LimitOutcome& o);

}  // namespace neutro
