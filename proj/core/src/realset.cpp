#include "neutro/realset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "neutro/error.hpp"

namespace neutro {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidEndpoint: return "InvalidEndpoint";
    case Errc::DivisionBySetContainingZero: return "DivisionBySetContainingZero";
    case Errc::EmptySet: return "EmptySet";
    case Errc::UndefinedSubindeterminacyProduct: return "UndefinedSubindeterminacyProduct";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::IndeterminateDenominator: return "IndeterminateDenominator";
    case Errc::DomainError: return "DomainError";
    case Errc::NotSupported: return "NotSupported";
    case Errc::ParseError: return "ParseError";
    case Errc::OverlapError: return "OverlapError";
    case Errc::NonMonotoneParameter: return "NonMonotoneParameter";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NotFound: return "NotFound";
    case Errc::PreconditionError: return "PreconditionError";
    case Errc::IntegrationError: return "IntegrationError";
    case Errc::InvalidBounds: return "InvalidBounds";
    case Errc::UsageError: return "UsageError";
  }
  return "Unknown";
}

Interval Interval::make(double a, double b, bool a_open, bool b_open) {
  if (a > b) {
    std::swap(a, b);
    std::swap(a_open, b_open);
  }
  if (a == b) return point(a);
  return Interval{a, b, a_open, b_open};
}

bool Interval::contains(double x) const noexcept {
  if (x < lo || x > hi) return false;
  if (x == lo && lo_open) return false;
  if (x == hi && hi_open) return false;
  return true;
}

namespace {

bool piece_less(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  if (a.lo_open != b.lo_open) return !a.lo_open;
  if (a.hi != b.hi) return a.hi < b.hi;
  return a.hi_open && !b.hi_open;
}

// Sorts, drops empty pieces, and merges overlapping or adjacent ones.  Works
// for unbounded pieces as well (used by Region).
std::vector<Interval> canonical(std::vector<Interval> v) {
  std::erase_if(v, [](const Interval& p) { return p.is_empty(); });
  std::sort(v.begin(), v.end(), piece_less);
  std::vector<Interval> out;
  out.reserve(v.size());
  for (const auto& p : v) {
    if (out.empty()) {
      out.push_back(p);
      continue;
    }
    Interval& c = out.back();
    const bool touches = p.lo < c.hi || (p.lo == c.hi && !(c.hi_open && p.lo_open));
    if (!touches) {
      out.push_back(p);
      continue;
    }
    if (p.lo == c.lo) c.lo_open = c.lo_open && p.lo_open;
    if (p.hi > c.hi) {
      c.hi = p.hi;
      c.hi_open = p.hi_open;
    } else if (p.hi == c.hi) {
      c.hi_open = c.hi_open && p.hi_open;
    }
  }
  return out;
}

Interval meet(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_open = a.lo_open;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_open = b.lo_open;
  } else {
    r.lo = a.lo;
    r.lo_open = a.lo_open || b.lo_open;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_open = a.hi_open;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_open = b.hi_open;
  } else {
    r.hi = a.hi;
    r.hi_open = a.hi_open || b.hi_open;
  }
  return r;
}

std::vector<Interval> meet_all(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  for (const auto& p : a) {
    for (const auto& q : b) {
      Interval r = meet(p, q);
      if (!r.is_empty()) out.push_back(r);
    }
  }
  return canonical(std::move(out));
}

std::vector<Interval> split_at(std::vector<Interval> pieces, std::span<const double> xs) {
  for (double x : xs) {
    std::vector<Interval> next;
    next.reserve(pieces.size() + 1);
    for (const auto& p : pieces) {
      if (!p.contains(x)) {
        next.push_back(p);
        continue;
      }
      if (p.lo == p.hi) continue;
      Interval left{p.lo, x, p.lo_open, true};
      Interval right{x, p.hi, true, p.hi_open};
      if (!left.is_empty()) next.push_back(left);
      if (!right.is_empty()) next.push_back(right);
    }
    pieces = std::move(next);
  }
  return pieces;
}

void require_finite(double x) {
  if (!std::isfinite(x)) {
    throw Error(Errc::InvalidEndpoint, "set endpoint must be finite, got " + format_number(x));
  }
}

struct End {
  double v;
  bool open;
};

// Picks the extreme candidates; an extreme value is attained (closed) if any
// candidate producing it is attained.
Interval from_candidates(std::span<const End> c) {
  Interval r{c[0].v, c[0].v, c[0].open, c[0].open};
  for (const End& e : c.subspan(1)) {
    if (e.v < r.lo) {
      r.lo = e.v;
      r.lo_open = e.open;
    } else if (e.v == r.lo) {
      r.lo_open = r.lo_open && e.open;
    }
    if (e.v > r.hi) {
      r.hi = e.v;
      r.hi_open = e.open;
    } else if (e.v == r.hi) {
      r.hi_open = r.hi_open && e.open;
    }
  }
  return r;
}

// Endpoint products (or quotients, with b free of zero).  Quotients are
// divided directly so that point sets round exactly like x / y.
Interval piece_mul(const Interval& a, const Interval& b, bool divide = false) {
  const End ea[2] = {{a.lo, a.lo_open}, {a.hi, a.hi_open}};
  const End eb[2] = {{b.lo, b.lo_open}, {b.hi, b.hi_open}};
  End cand[4];
  int k = 0;
  for (const End& x : ea) {
    for (const End& y : eb) {
      // A product with an attained zero factor is itself attained.
      const bool zero_hit = (x.v == 0.0 && !x.open) || (!divide && y.v == 0.0 && !y.open);
      cand[k++] = End{divide ? x.v / y.v : x.v * y.v, (x.open || y.open) && !zero_hit};
    }
  }
  return from_candidates(cand);
}

Interval piece_arith(SetOp op, const Interval& a, const Interval& b) {
  switch (op) {
    case SetOp::Add:
      return Interval{a.lo + b.lo, a.hi + b.hi, a.lo_open || b.lo_open, a.hi_open || b.hi_open};
    case SetOp::Sub:
      return Interval{a.lo - b.hi, a.hi - b.lo, a.lo_open || b.hi_open, a.hi_open || b.lo_open};
    case SetOp::Mul:
      return piece_mul(a, b);
    case SetOp::Div:
      return piece_mul(a, b, true);
  }
  return a;
}

template <class F>
RealSet map_pieces(const RealSet& s, F&& f) {
  std::vector<Interval> out;
  for (const auto& p : s.pieces()) out.push_back(f(p));
  for (const auto& p : out) {
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi)) {
      throw Error(Errc::DomainError, "image of " + to_string(s) + " is unbounded");
    }
  }
  return RealSet::normalize(out);
}

template <class F>
Interval increasing(const Interval& p, F&& f) {
  return Interval{f(p.lo), f(p.hi), p.lo_open, p.hi_open};
}

Interval abs_piece(const Interval& p) {
  if (p.lo >= 0.0) return p;
  if (p.hi <= 0.0) return Interval{-p.hi, -p.lo, p.hi_open, p.lo_open};
  const End top[2] = {{-p.lo, p.lo_open}, {p.hi, p.hi_open}};
  Interval r = from_candidates(top);
  r.lo = 0.0;
  r.lo_open = false;
  return r;
}

// Image of a periodic function whose critical points are phase + k*pi.
template <class F>
Interval periodic_piece(const Interval& p, F&& f, double phase) {
  constexpr double pi = std::numbers::pi;
  if (p.hi - p.lo >= 2.0 * pi) return Interval{-1.0, 1.0, false, false};
  std::vector<End> cand{{f(p.lo), p.lo_open}, {f(p.hi), p.hi_open}};
  const double k0 = std::ceil((p.lo - phase) / pi);
  const double k1 = std::floor((p.hi - phase) / pi);
  for (double k = k0; k <= k1; k += 1.0) {
    const double x = phase + k * pi;
    if (x > p.lo && x < p.hi) cand.push_back({f(x), false});
  }
  return from_candidates(cand);
}

std::string endpoint_text(double v, const std::map<double, MembershipTriple>& memberships) {
  std::string s = format_number(v);
  if (auto it = memberships.find(v); it != memberships.end()) s += to_string(it->second);
  return s;
}

std::string pieces_text(const std::vector<Interval>& pieces,
                        const std::map<double, MembershipTriple>& memberships) {
  if (pieces.empty()) return "{}";
  std::string out;
  std::vector<double> pending_points;
  auto flush_points = [&] {
    if (pending_points.empty()) return;
    if (!out.empty()) out += " u ";
    out += "{";
    for (std::size_t i = 0; i < pending_points.size(); ++i) {
      if (i) out += ",";
      out += endpoint_text(pending_points[i], memberships);
    }
    out += "}";
    pending_points.clear();
  };
  for (const auto& p : pieces) {
    if (p.lo == p.hi) {
      pending_points.push_back(p.lo);
      continue;
    }
    flush_points();
    if (!out.empty()) out += " u ";
    out += p.lo_open ? "(" : "[";
    out += endpoint_text(p.lo, memberships);
    out += ",";
    out += endpoint_text(p.hi, memberships);
    out += p.hi_open ? ")" : "]";
  }
  flush_points();
  return out;
}

}  // namespace

RealSet from_canonical_pieces(std::vector<Interval> pieces,
                              std::map<double, MembershipTriple> memberships) {
  RealSet s;
  for (const auto& p : pieces) {
    if (p.lo == p.hi) {
      s.points_.push_back(p.lo);
    } else {
      s.intervals_.push_back(p);
    }
  }
  std::erase_if(memberships, [&](const auto& kv) {
    for (const auto& p : pieces) {
      if (p.lo == kv.first || p.hi == kv.first) return false;
    }
    return true;
  });
  s.memberships_ = std::move(memberships);
  return s;
}

RealSet RealSet::normalize(std::span<const Interval> intervals, std::span<const double> points) {
  std::vector<Interval> raw;
  raw.reserve(intervals.size() + points.size());
  for (const auto& iv : intervals) {
    require_finite(iv.lo);
    require_finite(iv.hi);
    raw.push_back(Interval::make(iv.lo, iv.hi, iv.lo_open, iv.hi_open));
  }
  for (double p : points) {
    require_finite(p);
    raw.push_back(Interval::point(p));
  }
  return from_canonical_pieces(canonical(std::move(raw)), {});
}

RealSet RealSet::point(double x) {
  const double pts[1] = {x};
  return normalize({}, pts);
}

RealSet RealSet::points(std::initializer_list<double> xs) {
  return normalize({}, std::span<const double>(xs.begin(), xs.size()));
}

RealSet RealSet::interval(double lo, double hi, bool lo_open, bool hi_open) {
  // (a,a], [a,a) and (a,a) contain nothing.
  if (lo == hi && (lo_open || hi_open)) {
    require_finite(lo);
    return RealSet();
  }
  const Interval iv[1] = {Interval::make(lo, hi, lo_open, hi_open)};
  return normalize(iv);
}

std::vector<Interval> RealSet::pieces() const {
  std::vector<Interval> out;
  out.reserve(intervals_.size() + points_.size());
  auto it = intervals_.begin();
  auto pt = points_.begin();
  while (it != intervals_.end() || pt != points_.end()) {
    if (pt == points_.end() || (it != intervals_.end() && it->lo < *pt)) {
      out.push_back(*it++);
    } else {
      out.push_back(Interval::point(*pt++));
    }
  }
  return out;
}

double RealSet::inf() const {
  if (empty()) throw Error(Errc::EmptySet, "infimum of the empty set");
  if (points_.empty()) return intervals_.front().lo;
  if (intervals_.empty()) return points_.front();
  return std::min(intervals_.front().lo, points_.front());
}

double RealSet::sup() const {
  if (empty()) throw Error(Errc::EmptySet, "supremum of the empty set");
  if (points_.empty()) return intervals_.back().hi;
  if (intervals_.empty()) return points_.back();
  return std::max(intervals_.back().hi, points_.back());
}

bool RealSet::inf_attained() const {
  const double v = inf();
  if (!points_.empty() && points_.front() == v) return true;
  return !intervals_.front().lo_open;
}

bool RealSet::sup_attained() const {
  const double v = sup();
  if (!points_.empty() && points_.back() == v) return true;
  return !intervals_.back().hi_open;
}

bool RealSet::contains(double x) const noexcept {
  if (std::binary_search(points_.begin(), points_.end(), x)) return true;
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [x](const Interval& iv) { return iv.contains(x); });
}

bool RealSet::closure_contains(double x) const noexcept {
  if (std::binary_search(points_.begin(), points_.end(), x)) return true;
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [x](const Interval& iv) { return iv.lo <= x && x <= iv.hi; });
}

Interval RealSet::hull() const {
  return Interval{inf(), sup(), !inf_attained(), !sup_attained()};
}

RealSet RealSet::with_membership(double at, MembershipTriple m) const {
  auto memberships = memberships_;
  memberships[at] = m;
  return from_canonical_pieces(pieces(), std::move(memberships));
}

RealSet RealSet::without_memberships() const { return from_canonical_pieces(pieces(), {}); }

// --- Region -----------------------------------------------------------------

Region Region::all() {
  Region r;
  const double inf = std::numeric_limits<double>::infinity();
  r.pieces_.push_back(Interval{-inf, inf, true, true});
  return r;
}

Region Region::from(std::span<const Interval> pieces) {
  std::vector<Interval> raw;
  for (auto p : pieces) {
    if (std::isnan(p.lo) || std::isnan(p.hi)) {
      throw Error(Errc::InvalidEndpoint, "region endpoint is NaN");
    }
    p = Interval::make(p.lo, p.hi, p.lo_open, p.hi_open);
    if (std::isinf(p.lo)) p.lo_open = true;
    if (std::isinf(p.hi)) p.hi_open = true;
    raw.push_back(p);
  }
  Region r;
  r.pieces_ = canonical(std::move(raw));
  return r;
}

Region Region::of(const RealSet& set) {
  Region r;
  r.pieces_ = set.pieces();
  return r;
}

bool Region::contains(double x) const noexcept {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [x](const Interval& p) { return p.contains(x); });
}

bool Region::overlaps(const Region& other) const { return !intersect(other).empty(); }

bool Region::is_bounded() const noexcept {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Interval& p) {
    return std::isfinite(p.lo) && std::isfinite(p.hi);
  });
}

Region Region::intersect(const Region& other) const {
  Region r;
  r.pieces_ = meet_all(pieces_, other.pieces_);
  return r;
}

Region Region::unite(const Region& other) const {
  std::vector<Interval> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  Region r;
  r.pieces_ = canonical(std::move(all));
  return r;
}

Region Region::without(std::span<const double> xs) const {
  Region r;
  r.pieces_ = canonical(split_at(pieces_, xs));
  return r;
}

RealSet Region::clip(const RealSet& set) const {
  return from_canonical_pieces(meet_all(set.pieces(), pieces_), set.boundary_memberships());
}

// --- Set operations ---------------------------------------------------------

RealSet set_arith(SetOp op, const RealSet& s, const RealSet& t) {
  if (op == SetOp::Div && t.closure_contains(0.0)) {
    throw Error(Errc::DivisionBySetContainingZero,
                "divisor " + to_string(t) + " contains 0 in its closure");
  }
  const auto sp = s.pieces();
  const auto tp = t.pieces();
  std::vector<Interval> out;
  out.reserve(sp.size() * tp.size());
  for (const auto& a : sp) {
    for (const auto& b : tp) out.push_back(piece_arith(op, a, b));
  }
  for (const auto& p : out) {
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi)) {
      throw Error(Errc::DomainError, "arithmetic result is not finite");
    }
  }
  return from_canonical_pieces(canonical(std::move(out)), {});
}

RealSet scale(double alpha, const RealSet& s) {
  if (s.empty()) return s;
  if (alpha == 0.0) return RealSet::point(0.0);
  return set_arith(SetOp::Mul, s, RealSet::point(alpha));
}

RealSet negate(const RealSet& s) { return scale(-1.0, s); }

RealSet intersect(const RealSet& a, const RealSet& b) {
  auto memberships = a.boundary_memberships();
  memberships.insert(b.boundary_memberships().begin(), b.boundary_memberships().end());
  return from_canonical_pieces(meet_all(a.pieces(), b.pieces()), std::move(memberships));
}

RealSet unite(const RealSet& a, const RealSet& b) {
  auto all = a.pieces();
  const auto bp = b.pieces();
  all.insert(all.end(), bp.begin(), bp.end());
  auto memberships = a.boundary_memberships();
  memberships.insert(b.boundary_memberships().begin(), b.boundary_memberships().end());
  return from_canonical_pieces(canonical(std::move(all)), std::move(memberships));
}

RealSet without_points(const RealSet& s, std::span<const double> xs) {
  return from_canonical_pieces(canonical(split_at(s.pieces(), xs)), s.boundary_memberships());
}

bool is_subset(const RealSet& a, const RealSet& b) {
  return meet_all(a.pieces(), b.pieces()) == a.pieces();
}

double mu_norm(const RealSet& s) {
  if (s.empty()) throw Error(Errc::EmptySet, "norm of the empty set");
  return std::max(std::abs(s.inf()), std::abs(s.sup()));
}

double eta_metric(const RealSet& a, const RealSet& b) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptySet, "partial metric with an empty operand");
  return std::max(std::abs(a.inf() - b.inf()), std::abs(a.sup() - b.sup()));
}

MembershipTriple membership(const RealSet& s, double x) {
  const auto& m = s.boundary_memberships();
  if (auto it = m.find(x); it != m.end()) return it->second;
  return s.contains(x) ? MembershipTriple::member() : MembershipTriple::non_member();
}

bool neutro_subset(const RealSet& m, const RealSet& n) {
  std::vector<double> annotated;
  for (const auto& [x, _] : m.boundary_memberships()) annotated.push_back(x);
  for (const auto& [x, _] : n.boundary_memberships()) annotated.push_back(x);
  std::sort(annotated.begin(), annotated.end());
  annotated.erase(std::unique(annotated.begin(), annotated.end()), annotated.end());

  if (!is_subset(without_points(m, annotated).without_memberships(), n.without_memberships())) {
    return false;
  }
  for (double x : annotated) {
    const auto a = membership(m, x);
    if (a.t == 0.0 && a.i == 0.0 && a.f == 1.0) continue;  // not an element of m
    const auto b = membership(n, x);
    if (!(a.t <= b.t && a.i >= b.i && a.f >= b.f)) return false;
  }
  return true;
}

bool approx_equal(const RealSet& a, const RealSet& b, double tol) {
  const auto pa = a.pieces();
  const auto pb = b.pieces();
  if (pa.size() != pb.size()) return false;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    const bool pa_point = pa[k].lo == pa[k].hi;
    const bool pb_point = pb[k].lo == pb[k].hi;
    if (std::abs(pa[k].lo - pb[k].lo) > tol || std::abs(pa[k].hi - pb[k].hi) > tol) return false;
    if (pa_point != pb_point) continue;
    if (pa[k].lo_open != pb[k].lo_open || pa[k].hi_open != pb[k].hi_open) return false;
  }
  return true;
}

// --- Elementary functions ---------------------------------------------------

RealSet set_exp(const RealSet& s) {
  return map_pieces(s, [](const Interval& p) {
    return increasing(p, [](double x) { return std::exp(x); });
  });
}

RealSet set_ln(const RealSet& s) {
  for (const auto& p : s.pieces()) {
    if (!(p.lo > 0.0)) throw Error(Errc::DomainError, "ln undefined on " + to_string(s));
  }
  return map_pieces(s, [](const Interval& p) {
    return increasing(p, [](double x) { return std::log(x); });
  });
}

RealSet set_sqrt(const RealSet& s) {
  for (const auto& p : s.pieces()) {
    if (p.lo < 0.0) throw Error(Errc::DomainError, "sqrt undefined on " + to_string(s));
  }
  return map_pieces(s, [](const Interval& p) {
    return increasing(p, [](double x) { return std::sqrt(x); });
  });
}

RealSet set_abs(const RealSet& s) { return map_pieces(s, abs_piece); }

RealSet set_sin(const RealSet& s) {
  return map_pieces(s, [](const Interval& p) {
    return periodic_piece(p, [](double x) { return std::sin(x); }, std::numbers::pi / 2.0);
  });
}

RealSet set_cos(const RealSet& s) {
  return map_pieces(s, [](const Interval& p) {
    return periodic_piece(p, [](double x) { return std::cos(x); }, 0.0);
  });
}

RealSet set_pow(const RealSet& s, int n) {
  if (s.empty()) return s;
  if (n == 0) return RealSet::point(1.0);
  if (n < 0) return set_arith(SetOp::Div, RealSet::point(1.0), set_pow(s, -n));
  auto power = [n](double x) { return std::pow(x, n); };
  if (n % 2 == 1) {
    return map_pieces(s, [&](const Interval& p) { return increasing(p, power); });
  }
  return map_pieces(s, [&](const Interval& p) { return increasing(abs_piece(p), power); });
}

// --- Text -------------------------------------------------------------------

std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string to_string(const MembershipTriple& m) {
  return "<" + format_number(m.t) + "," + format_number(m.i) + "," + format_number(m.f) + ">";
}

std::string to_string(const RealSet& s) {
  return pieces_text(s.pieces(), s.boundary_memberships());
}

std::string to_string(const Region& r) { return pieces_text(r.pieces(), {}); }

}  // namespace neutro
