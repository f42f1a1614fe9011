#pragma once

#include <string>
#include <variant>
#include <vector>

#include "neutro/neutronum.hpp"
#include "neutro/realset.hpp"

namespace neutro {

/// One alternative of an evaluation result.
using Branch = std::variant<RealSet, NeutroNumber>;

/// Result of evaluating a neutrosophic function: a non-empty list of
/// alternatives ("2 or 4").  A single branch is a determinate value.
/// Crisp NeutroNumbers are stored as point sets so that equal values have a
/// single representation.
class NeutroValue {
 public:
  NeutroValue() : branches_{RealSet::point(0.0)} {}
  NeutroValue(RealSet s) : branches_{std::move(s)} {}  // NOLINT(google-explicit-constructor)
  NeutroValue(NeutroNumber n);                         // NOLINT(google-explicit-constructor)
  NeutroValue(double x) : branches_{RealSet::point(x)} {}  // NOLINT(google-explicit-constructor)
  /// Throws EmptySet when `branches` is empty.
  explicit NeutroValue(std::vector<Branch> branches);

  [[nodiscard]] const std::vector<Branch>& branches() const noexcept { return branches_; }
  [[nodiscard]] std::size_t size() const noexcept { return branches_.size(); }
  [[nodiscard]] bool is_determinate() const noexcept { return branches_.size() == 1; }
  /// The single set branch; throws NotSupported otherwise.
  [[nodiscard]] const RealSet& as_set() const;
  /// Union of all set branches; throws NotSupported if a branch is indeterminate.
  [[nodiscard]] RealSet set_union() const;
  [[nodiscard]] bool contains(double x) const;

  friend bool operator==(const NeutroValue&, const NeutroValue&) = default;

 private:
  std::vector<Branch> branches_;
};

Branch canonical_branch(Branch b);
NeutroValue negate(const NeutroValue& v);
/// Branch-set equality ignoring order, endpoints compared within `tol`.
bool same_branches(const NeutroValue& a, const NeutroValue& b, double tol = 1e-9);
bool approx_equal(const Branch& a, const Branch& b, double tol);

std::string to_string(const Branch& b);
/// Branches joined by " or ".
std::string to_string(const NeutroValue& v);

}  // namespace neutro
