#include "neutro/contin.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "neutro/error.hpp"
#include "neutro/evaluate.hpp"

namespace neutro {

namespace {

RealSet value_set(const FuncSpec& f, double x) { return eval_at(f, x).set_union(); }

std::optional<RealSet> try_value(const FuncSpec& f, double x) {
  try {
    return value_set(f, x);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Signed gap between the value set at x and k: 0 when k is a member, positive
// when the whole set lies above k, negative when below, nullopt when k falls
// in a hole of the set or f fails.
std::optional<double> gap(const FuncSpec& f, double x, double k) {
  auto s = try_value(f, x);
  if (!s || s->empty()) return std::nullopt;
  if (s->contains(k)) return 0.0;
  if (s->inf() >= k) return s->inf() - k;
  if (s->sup() <= k) return s->sup() - k;
  return std::nullopt;
}

bool member(const FuncSpec& f, double x, double k) {
  auto s = try_value(f, x);
  return s && s->contains(k);
}

double grid_point(double a, double b, int i, int grid) {
  return i == grid ? b : a + (b - a) * static_cast<double>(i) / grid;
}

struct Range {
  double m;
  double M;
};

Range endpoint_range(const FuncSpec& f, double a, double b, int grid) {
  if (!(a <= b)) throw Error(Errc::PreconditionError, "need a <= b");
  if (grid < 1) throw Error(Errc::PreconditionError, "grid must be positive");
  const RealSet fa = value_set(f, a);
  const RealSet fb = value_set(f, b);
  Range r{std::min(fa.inf(), fb.inf()), std::max(fa.sup(), fb.sup())};
  if (r.m == r.M) throw Error(Errc::PreconditionError, "f(a) and f(b) span a single value");
  return r;
}

// Table arguments that are single points inside [a,b], ascending.
std::optional<std::vector<double>> table_candidates(const FuncSpec& f, double a, double b) {
  const auto* t = f.as<spec::Table>();
  if (!t) return std::nullopt;
  std::set<double> xs;
  for (const auto& row : t->rows) {
    for (double p : row.arg.isolated_points()) {
      if (p >= a && p <= b) xs.insert(p);
    }
  }
  return std::vector<double>(xs.begin(), xs.end());
}

bool verified(const FuncSpec& f, double c, double k) {
  auto g = gap(f, c, k);
  return g && std::abs(*g) <= 1e-9 * std::max(1.0, std::abs(k));
}

// Shortest decimal within 2e-9 of c that is at least as good a witness.
double snap(const FuncSpec& f, double c, double k, double a, double b) {
  const bool was_member = member(f, c, k);
  const double was_gap = std::abs(gap(f, c, k).value_or(0.0));
  for (int d = 0; d <= 12; ++d) {
    const double s = std::pow(10.0, d);
    const double r = std::round(c * s) / s;
    if (std::abs(r - c) > 2e-9 || r < a || r > b) continue;
    if (was_member ? member(f, r, k) : std::abs(gap(f, r, k).value_or(1.0)) <= was_gap) return r;
  }
  return c;
}

// First member in (out, in], where `in` is a member and `out` is not.
double refine_membership(const FuncSpec& f, double out, double in, double k) {
  for (int it = 0; it < 200 && in - out > 1e-11; ++it) {
    const double mid = 0.5 * (out + in);
    if (mid == out || mid == in) break;
    (member(f, mid, k) ? in : out) = mid;
  }
  return in;
}

// Point of [lo,hi] where the gap changes sign, to machine precision.
std::optional<double> refine_sign(const FuncSpec& f, double lo, double hi, double k) {
  double glo = *gap(f, lo, k);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    auto gm = gap(f, mid, k);
    if (!gm) return std::nullopt;
    if (*gm == 0.0) return refine_membership(f, lo, mid, k);
    if ((*gm > 0) == (glo > 0)) {
      lo = mid;
      glo = *gm;
    } else {
      hi = mid;
    }
  }
  const double glo_abs = std::abs(*gap(f, lo, k));
  auto ghi = gap(f, hi, k);
  return ghi && std::abs(*ghi) < glo_abs ? hi : lo;
}

}  // namespace

ContinuityClass classify_at(const FuncSpec& f, double c, const LimitConfig& cfg) {
  using K = ContinuityClass::Kind;
  RealSet fc;
  try {
    fc = value_set(f, c);
  } catch (const Error& e) {
    return {K::Discontinuous, {}, std::string("f(c) undefined: ") + e.what()};
  }
  const LimitOutcome l = directional_limit(f, c, Side::Left, cfg);
  if (!l.is_finite()) return {K::Discontinuous, {}, "left limit " + to_string(l)};
  const LimitOutcome r = directional_limit(f, c, Side::Right, cfg);
  if (!r.is_finite()) return {K::Discontinuous, {}, "right limit " + to_string(r)};
  if (within_tol(l.value(), r.value(), cfg.tol) && within_tol(l.value(), fc, cfg.tol)) {
    return {K::Continuous, fc, {}};
  }
  RealSet w = intersect(intersect(l.value(), r.value()), fc);
  if (!w.empty()) return {K::MereoContinuous, std::move(w), {}};
  return {K::Discontinuous, {},
          "left " + to_string(l.value()) + ", right " + to_string(r.value()) + " and f(c) " +
              to_string(fc) + " have no common point"};
}

double ivt_find(const FuncSpec& f, double a, double b, double k, int grid) {
  const Range r = endpoint_range(f, a, b, grid);
  if (k < r.m || k > r.M) {
    throw Error(Errc::OutOfRange, format_number(k) + " outside [" + format_number(r.m) + ", " +
                                      format_number(r.M) + "]");
  }
  if (auto xs = table_candidates(f, a, b)) {
    for (double x : *xs) {
      if (member(f, x, k)) return x;
    }
    throw Error(Errc::NotFound, "no tabulated argument has " + format_number(k) + " in its value");
  }
  std::optional<double> prev_gap;
  double prev_x = a;
  for (int i = 0; i <= grid; ++i) {
    const double x = grid_point(a, b, i, grid);
    const auto g = gap(f, x, k);
    std::optional<double> c;
    if (g && std::abs(*g) <= 1e-9) {
      c = (*g == 0.0 && i > 0 && !member(f, prev_x, k)) ? refine_membership(f, prev_x, x, k) : x;
    } else if (g && prev_gap && *prev_gap != 0.0 && (*g > 0) != (*prev_gap > 0)) {
      c = refine_sign(f, prev_x, x, k);
    }
    if (c && verified(f, *c, k)) return snap(f, *c, k, a, b);
    prev_gap = g;
    prev_x = x;
  }
  throw Error(Errc::NotFound,
              "no witness for " + format_number(k) + " at grid " + std::to_string(grid));
}

std::vector<double> ivt_cover(const FuncSpec& f, double a, double b, double k1, double k2,
                              int grid) {
  const Range r = endpoint_range(f, a, b, grid);
  if (k1 > k2) throw Error(Errc::PreconditionError, "need k1 <= k2");
  if (k1 < r.m || k2 > r.M) {
    throw Error(Errc::OutOfRange, "[" + format_number(k1) + ", " + format_number(k2) +
                                      "] not inside [" + format_number(r.m) + ", " +
                                      format_number(r.M) + "]");
  }
  if (k1 == k2) return {ivt_find(f, a, b, k1, grid)};

  std::vector<double> xs;
  if (auto t = table_candidates(f, a, b)) {
    xs = *t;
  } else {
    for (int i = 0; i <= grid; ++i) xs.push_back(grid_point(a, b, i, grid));
  }
  std::vector<std::pair<double, RealSet>> cands;
  for (double x : xs) {
    if (auto s = try_value(f, x)) cands.emplace_back(x, std::move(*s));
  }

  std::set<double> chosen;
  double reach = k1;
  bool covered = false;  // whether reach itself is already covered
  for (std::size_t round = 0; round <= cands.size(); ++round) {
    int best = -1;
    double best_ext = -HUGE_VAL;
    bool best_closed = false;
    for (std::size_t j = 0; j < cands.size(); ++j) {
      for (const Interval& p : cands[j].second.pieces()) {
        const bool extends = covered ? (p.lo <= reach && reach < p.hi) : p.contains(reach);
        if (!extends) continue;
        double ext = p.hi;
        bool closed = !p.hi_open;
        if (ext >= k2) {
          ext = k2;
          closed = closed || p.hi > k2;
        }
        if (ext > best_ext || (ext == best_ext && closed && !best_closed)) {
          best = static_cast<int>(j);
          best_ext = ext;
          best_closed = closed;
        }
      }
    }
    if (best < 0 || (covered && best_ext <= reach)) {
      throw Error(Errc::NotFound, "cannot cover beyond " + format_number(reach) + " at grid " +
                                      std::to_string(grid));
    }
    chosen.insert(cands[static_cast<std::size_t>(best)].first);
    reach = best_ext;
    covered = best_closed;
    if (reach == k2 && covered) break;
  }

  std::vector<double> out(chosen.begin(), chosen.end());
  RealSet uni;
  for (double x : out) uni = unite(uni, value_set(f, x));
  if (!is_subset(RealSet::closed(k1, k2), uni)) {
    throw Error(Errc::NotFound, "greedy cover does not contain the target interval");
  }
  return out;
}

bool check_closure(const FuncSpec& f, const FuncSpec& g, double c, ClosureOp op, double alpha,
                   const LimitConfig& cfg) {
  auto ok = [](const ContinuityClass& k) {
    return k.kind != ContinuityClass::Kind::Discontinuous;
  };
  if (!ok(classify_at(f, c, cfg))) {
    throw Error(Errc::PreconditionError, "first function is not mereo-continuous at c");
  }
  FuncSpec combined;
  if (op == ClosureOp::Scale) {
    if (alpha == 0.0) throw Error(Errc::PreconditionError, "scale factor must be nonzero");
    combined = FuncSpec::scaled(alpha, f);
  } else {
    if (!ok(classify_at(g, c, cfg))) {
      throw Error(Errc::PreconditionError, "second function is not mereo-continuous at c");
    }
    if (op == ClosureOp::Div && value_set(g, c).closure_contains(0.0)) {
      throw Error(Errc::PreconditionError, "divisor contains 0 at c");
    }
    static constexpr SetOp ops[] = {SetOp::Add, SetOp::Sub, SetOp::Mul, SetOp::Div};
    combined = FuncSpec::combined(ops[static_cast<int>(op)], f, g);
  }
  return ok(classify_at(combined, c, cfg));
}

std::string to_string(const ContinuityClass& c) {
  switch (c.kind) {
    case ContinuityClass::Kind::Continuous: return "continuous";
    case ContinuityClass::Kind::MereoContinuous:
      return "mereo-continuous, witness " + to_string(c.witness);
    case ContinuityClass::Kind::Discontinuous: break;
  }
  return c.reason.empty() ? "discontinuous" : "discontinuous (" + c.reason + ")";
}

}  // namespace neutro
