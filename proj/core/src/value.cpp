#include "neutro/value.hpp"

#include <cmath>

#include "neutro/error.hpp"

namespace neutro {

Branch canonical_branch(Branch b) {
  if (const auto* n = std::get_if<NeutroNumber>(&b); n && n->is_crisp()) {
    return RealSet::point(n->determinate());
  }
  return b;
}

NeutroValue::NeutroValue(NeutroNumber n) : branches_{canonical_branch(std::move(n))} {}

NeutroValue::NeutroValue(std::vector<Branch> branches) {
  if (branches.empty()) throw Error(Errc::EmptySet, "a value needs at least one branch");
  branches_.reserve(branches.size());
  for (auto& b : branches) branches_.push_back(canonical_branch(std::move(b)));
}

const RealSet& NeutroValue::as_set() const {
  if (branches_.size() != 1 || !std::holds_alternative<RealSet>(branches_.front())) {
    throw Error(Errc::NotSupported, "expected a single set value, got " + to_string(*this));
  }
  return std::get<RealSet>(branches_.front());
}

RealSet NeutroValue::set_union() const {
  RealSet out;
  for (const auto& b : branches_) {
    const auto* s = std::get_if<RealSet>(&b);
    if (!s) throw Error(Errc::NotSupported, "indeterminate branch " + to_string(b));
    out = unite(out, *s);
  }
  return out;
}

bool NeutroValue::contains(double x) const {
  for (const auto& b : branches_) {
    if (const auto* s = std::get_if<RealSet>(&b); s && s->contains(x)) return true;
  }
  return false;
}

NeutroValue negate(const NeutroValue& v) {
  std::vector<Branch> out;
  for (const auto& b : v.branches()) {
    if (const auto* s = std::get_if<RealSet>(&b)) {
      out.emplace_back(negate(*s));
    } else {
      out.emplace_back(-std::get<NeutroNumber>(b));
    }
  }
  return NeutroValue(std::move(out));
}

bool approx_equal(const Branch& a, const Branch& b, double tol) {
  if (a.index() != b.index()) return false;
  if (const auto* s = std::get_if<RealSet>(&a)) return approx_equal(*s, std::get<RealSet>(b), tol);
  const auto& x = std::get<NeutroNumber>(a);
  const auto& y = std::get<NeutroNumber>(b);
  const NeutroNumber d = x - y;
  if (std::abs(d.determinate()) > tol) return false;
  for (const auto& [_, c] : d.indeterminate()) {
    if (std::abs(c) > tol) return false;
  }
  return true;
}

bool same_branches(const NeutroValue& a, const NeutroValue& b, double tol) {
  auto covered = [tol](const NeutroValue& p, const NeutroValue& q) {
    for (const auto& x : p.branches()) {
      bool hit = false;
      for (const auto& y : q.branches()) hit = hit || approx_equal(x, y, tol);
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

std::string to_string(const Branch& b) {
  if (const auto* s = std::get_if<RealSet>(&b)) {
    // Points render without braces so "2 or 4" reads naturally.
    if (s->is_point() && s->boundary_memberships().empty()) return format_number(s->inf());
    return to_string(*s);
  }
  return to_string(std::get<NeutroNumber>(b));
}

std::string to_string(const NeutroValue& v) {
  std::string out;
  for (const auto& b : v.branches()) {
    if (!out.empty()) out += " or ";
    out += to_string(b);
  }
  return out;
}

}  // namespace neutro
