#pragma once

#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace neutro {

/// A real interval with independent endpoint openness.  The constructor
/// helpers sort reversed endpoints, so [5,3] and [3,5] denote the same set.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  static Interval make(double a, double b, bool a_open = false, bool b_open = false);
  static Interval closed(double a, double b) { return make(a, b); }
  static Interval open(double a, double b) { return make(a, b, true, true); }
  static Interval point(double x) { return Interval{x, x, false, false}; }

  [[nodiscard]] bool is_point() const noexcept { return lo == hi && !lo_open && !hi_open; }
  [[nodiscard]] bool is_empty() const noexcept {
    return lo > hi || (lo == hi && (lo_open || hi_open));
  }
  [[nodiscard]] bool contains(double x) const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Degrees of truth, indeterminacy and falsity of an element's membership.
/// The components are independent and are not required to sum to one.
struct MembershipTriple {
  double t = 1.0;
  double i = 0.0;
  double f = 0.0;

  static constexpr MembershipTriple member() { return {1.0, 0.0, 0.0}; }
  static constexpr MembershipTriple non_member() { return {0.0, 0.0, 1.0}; }

  friend bool operator==(const MembershipTriple&, const MembershipTriple&) = default;
};

/// Certainty attached to an (argument, value) pair of a tabulated relation.
struct PairTag {
  enum class Kind { Sure, Partial, Potential };
  Kind kind = Kind::Sure;
  MembershipTriple degree{};

  static PairTag sure() { return {}; }
  static PairTag partial(MembershipTriple d) { return {Kind::Partial, d}; }
  static PairTag potential() { return {Kind::Potential, {}}; }

  friend bool operator==(const PairTag&, const PairTag&) = default;
};

/// A bounded subset of the reals in canonical form: sorted, pairwise disjoint,
/// non-adjacent intervals plus isolated points not covered by any interval.
/// Endpoints may carry a (t,i,f) annotation which only affects membership
/// queries.
class RealSet {
 public:
  RealSet() = default;

  /// Canonicalizes arbitrary intervals and points.  Throws InvalidEndpoint on
  /// NaN or infinite endpoints.
  static RealSet normalize(std::span<const Interval> intervals,
                           std::span<const double> points = {});
  static RealSet point(double x);
  static RealSet points(std::initializer_list<double> xs);
  static RealSet interval(double lo, double hi, bool lo_open = false, bool hi_open = false);
  static RealSet closed(double lo, double hi) { return interval(lo, hi); }
  static RealSet open(double lo, double hi) { return interval(lo, hi, true, true); }

  [[nodiscard]] const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  [[nodiscard]] const std::vector<double>& isolated_points() const noexcept { return points_; }
  [[nodiscard]] const std::map<double, MembershipTriple>& boundary_memberships() const noexcept {
    return memberships_;
  }

  /// Intervals and points merged in ascending order; points appear as
  /// degenerate closed intervals.
  [[nodiscard]] std::vector<Interval> pieces() const;

  [[nodiscard]] bool empty() const noexcept { return intervals_.empty() && points_.empty(); }
  [[nodiscard]] double inf() const;
  [[nodiscard]] double sup() const;
  [[nodiscard]] bool inf_attained() const;
  [[nodiscard]] bool sup_attained() const;
  [[nodiscard]] bool contains(double x) const noexcept;
  [[nodiscard]] bool closure_contains(double x) const noexcept;
  [[nodiscard]] bool is_point() const noexcept { return intervals_.empty() && points_.size() == 1; }
  [[nodiscard]] bool is_connected() const noexcept { return intervals_.size() + points_.size() == 1; }
  [[nodiscard]] Interval hull() const;

  /// Copy with a (t,i,f) annotation on `at`.  Annotations are kept only for
  /// endpoints and isolated points; others are dropped on normalization.
  [[nodiscard]] RealSet with_membership(double at, MembershipTriple m) const;
  [[nodiscard]] RealSet without_memberships() const;

  friend bool operator==(const RealSet&, const RealSet&) = default;

 private:
  friend RealSet from_canonical_pieces(std::vector<Interval> pieces,
                                       std::map<double, MembershipTriple> memberships);

  std::vector<Interval> intervals_;
  std::vector<double> points_;
  std::map<double, MembershipTriple> memberships_;
};

/// Piece domains of piecewise definitions.  Unlike RealSet a Region may be
/// unbounded; infinite endpoints are always open.
class Region {
 public:
  Region() = default;
  static Region all();
  static Region from(std::span<const Interval> pieces);
  static Region of(const RealSet& set);

  [[nodiscard]] const std::vector<Interval>& pieces() const noexcept { return pieces_; }
  [[nodiscard]] bool empty() const noexcept { return pieces_.empty(); }
  [[nodiscard]] bool contains(double x) const noexcept;
  [[nodiscard]] bool overlaps(const Region& other) const;
  [[nodiscard]] bool is_bounded() const noexcept;
  [[nodiscard]] Region intersect(const Region& other) const;
  [[nodiscard]] Region unite(const Region& other) const;
  [[nodiscard]] Region without(std::span<const double> xs) const;
  /// Part of a bounded set that lies inside the region.
  [[nodiscard]] RealSet clip(const RealSet& set) const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  std::vector<Interval> pieces_;
};

enum class SetOp { Add, Sub, Mul, Div };

/// Exact image {s (op) t} of two sets.  Div throws DivisionBySetContainingZero
/// when 0 lies in the closure of the divisor.
RealSet set_arith(SetOp op, const RealSet& s, const RealSet& t);
RealSet scale(double alpha, const RealSet& s);
RealSet negate(const RealSet& s);

RealSet intersect(const RealSet& a, const RealSet& b);
RealSet unite(const RealSet& a, const RealSet& b);
RealSet without_points(const RealSet& s, std::span<const double> xs);
bool is_subset(const RealSet& a, const RealSet& b);

/// max(|inf S|, |sup S|); throws EmptySet.
double mu_norm(const RealSet& s);
/// max(|inf A - inf B|, |sup A - sup B|); throws EmptySet.
double eta_metric(const RealSet& a, const RealSet& b);

MembershipTriple membership(const RealSet& s, double x);
/// Neutrosophic inclusion: t_M <= t_N, i_M >= i_N and f_M >= f_N everywhere.
bool neutro_subset(const RealSet& m, const RealSet& n);

/// Structural comparison with an absolute tolerance on every endpoint.
bool approx_equal(const RealSet& a, const RealSet& b, double tol);

// Images of bounded sets under elementary functions.  They throw DomainError
// when the image would leave the representable (bounded) sets.
RealSet set_exp(const RealSet& s);
RealSet set_ln(const RealSet& s);
RealSet set_sqrt(const RealSet& s);
RealSet set_abs(const RealSet& s);
RealSet set_sin(const RealSet& s);
RealSet set_cos(const RealSet& s);
RealSet set_pow(const RealSet& s, int n);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);
std::string to_string(const RealSet& s);
std::string to_string(const Region& r);
std::string to_string(const MembershipTriple& m);

}  // namespace neutro
