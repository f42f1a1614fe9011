#pragma once

// Randomized property suites.  Each returns how many cases ran and the first
// counterexample, so gtest and the acceptance binary can share them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "gen.hpp"
#include "neutro/calc.hpp"
#include "neutro/contin.hpp"
#include "neutro/error.hpp"
#include "neutro/evaluate.hpp"
#include "neutro/funcops.hpp"
#include "neutro/limits.hpp"
#include "neutro/polynomial.hpp"
#include "neutro/textparse.hpp"

namespace neutro::testing {

struct Outcome {
  int cases = 0;
  int failures = 0;
  std::string first;

  void fail(const std::string& msg) {
    if (failures++ == 0) first = msg;
  }
  [[nodiscard]] bool ok() const { return failures == 0 && cases > 0; }
};

inline std::string str(const RealSet& s) { return to_string(s); }

// ---------------------------------------------------------------- realset

inline Outcome eta_axioms(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const RealSet a = g.set(), b = g.set(), c = g.set();
    const double ab = eta_metric(a, b);
    if (ab < 0) o.fail("negative eta " + str(a) + " " + str(b));
    if (eta_metric(a, a) != 0) o.fail("eta(A,A) != 0 for " + str(a));
    if (ab != eta_metric(b, a)) o.fail("eta not symmetric " + str(a) + " " + str(b));
    if (ab > eta_metric(b, c) + eta_metric(c, a) + 1e-12) {
      o.fail("triangle fails " + str(a) + " " + str(b) + " " + str(c));
    }
    // Partiality: filling the inside of a set keeps eta at 0.
    const RealSet hull = RealSet::closed(a.inf(), a.sup());
    if (eta_metric(a, hull) != 0) o.fail("hull changes eta for " + str(a));
  }
  const RealSet w1 = RealSet::points({3, 4, 5, 7});
  const RealSet w2 = RealSet::points({3, 7});
  if (!(eta_metric(w1, w2) == 0 && w1 != w2)) o.fail("partiality witness");
  return o;
}

inline Outcome mu_laws(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  auto near = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(y)); };
  for (int i = 0; i < n; ++i, ++o.cases) {
    const RealSet s1 = g.set(), s2 = g.set();
    const double t = g.real(-5, 5);
    if (mu_norm(negate(s1)) != mu_norm(s1)) o.fail("mu(-S) for " + str(s1));
    if (!near(mu_norm(scale(t, s1)), std::abs(t) * mu_norm(s1))) o.fail("mu(tS) for " + str(s1));
    if (mu_norm(set_arith(SetOp::Add, s1, s2)) > mu_norm(s1) + mu_norm(s2) + 1e-12) {
      o.fail("mu(S1+S2) for " + str(s1) + " " + str(s2));
    }
    if (mu_norm(set_arith(SetOp::Sub, s1, s2)) > mu_norm(s1) + mu_norm(s2) + 1e-12) {
      o.fail("mu(S1-S2) for " + str(s1) + " " + str(s2));
    }
    if (eta_metric(s1, RealSet::point(0)) != mu_norm(s1)) o.fail("eta(A,{0}) for " + str(s1));
  }
  return o;
}

inline RealSet nonzero_set(Gen& g) {
  RealSet s = g.set(0.25, 10);
  return g.coin() ? s : negate(s);
}

inline Outcome isotonicity(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  static constexpr SetOp ops[] = {SetOp::Add, SetOp::Sub, SetOp::Mul, SetOp::Div};
  static constexpr const char* names[] = {"+", "-", "*", "/"};
  for (int i = 0; i < n; ++i, ++o.cases) {
    for (int k = 0; k < 4; ++k) {
      const RealSet c = g.set();
      const RealSet d = k == 3 ? nonzero_set(g) : g.set();
      const RealSet a = g.subset_of(c);
      const RealSet b = g.subset_of(d);
      if (!is_subset(a, c) || !is_subset(b, d)) {
        o.fail("generator produced a non-subset");
        continue;
      }
      const RealSet ab = set_arith(ops[k], a, b);
      const RealSet cd = set_arith(ops[k], c, d);
      if (!is_subset(ab, cd)) {
        o.fail(str(a) + names[k] + str(b) + " = " + str(ab) + " not in " + str(c) + names[k] +
               str(d) + " = " + str(cd));
      }
    }
  }
  return o;
}

inline Outcome brute_force_arith(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  static constexpr SetOp ops[] = {SetOp::Add, SetOp::Sub, SetOp::Mul, SetOp::Div};
  for (int i = 0; i < n; ++i, ++o.cases) {
    const int k = g.integer(0, 3);
    const RealSet s = g.finite_points(6, -10, 10);
    RealSet t = g.finite_points(6, -10, 10);
    if (k == 3) t = without_points(t, std::vector<double>{0.0});
    if (t.empty()) t = RealSet::point(2);
    std::vector<double> out;
    for (double x : s.isolated_points()) {
      for (double y : t.isolated_points()) {
        switch (ops[k]) {
          case SetOp::Add: out.push_back(x + y); break;
          case SetOp::Sub: out.push_back(x - y); break;
          case SetOp::Mul: out.push_back(x * y); break;
          case SetOp::Div: out.push_back(x / y); break;
        }
      }
    }
    const RealSet expected = RealSet::normalize({}, out);
    const RealSet got = set_arith(ops[k], s, t);
    if (got != expected) o.fail(str(s) + " op" + std::to_string(k) + " " + str(t) + " gave " + str(got));
  }
  return o;
}

inline Outcome canonical_laws(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const RealSet a = g.set(), b = g.set(), c = g.set();
    if (RealSet::normalize(a.intervals(), a.isolated_points()) != a) o.fail("normalize " + str(a));
    if (intersect(a, a) != a) o.fail("A n A for " + str(a));
    if (intersect(a, b) != intersect(b, a)) o.fail("commutativity " + str(a) + " " + str(b));
    if (intersect(intersect(a, b), c) != intersect(a, intersect(b, c))) {
      o.fail("associativity " + str(a) + " " + str(b) + " " + str(c));
    }
  }
  return o;
}

// ---------------------------------------------------------------- neutronum

inline NeutroNumber random_nn(Gen& g, bool plain_only) {
  NeutroNumber x(g.real(-5, 5));
  const int terms = g.integer(0, plain_only ? 1 : 3);
  for (int t = 0; t < terms; ++t) {
    x = x + NeutroNumber::indeterminacy(plain_only ? 1 : g.integer(1, 3), g.real(-5, 5));
  }
  return x;
}

inline bool nn_near(const NeutroNumber& x, const NeutroNumber& y, double tol) {
  auto close = [&](double u, double v) { return std::abs(u - v) <= tol * std::max(1.0, std::abs(v)); };
  if (!close(x.determinate(), y.determinate())) return false;
  std::set<int> keys;
  for (const auto& [k, v] : x.indeterminate()) keys.insert(k);
  for (const auto& [k, v] : y.indeterminate()) keys.insert(k);
  for (int k : keys) {
    if (!close(x.coefficient(k), y.coefficient(k))) return false;
  }
  return true;
}

inline Outcome nn_algebra(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const NeutroNumber x = random_nn(g, false), y = random_nn(g, false);
    if (!nn_near((x + y) - y, x, 1e-12)) o.fail("(x+y)-y for " + to_string(x) + ", " + to_string(y));
    const NeutroNumber p = random_nn(g, true), q = random_nn(g, true), r = random_nn(g, true);
    if (!nn_near(p * q, q * p, 1e-12)) o.fail("commutativity " + to_string(p) + ", " + to_string(q));
    if (!nn_near((p * q) * r, p * (q * r), 1e-12)) o.fail("associativity " + to_string(p));
    const int k = g.integer(1, 3);
    const int m = g.integer(1, 8);
    NeutroNumber acc = NeutroNumber::indeterminacy(k);
    for (int j = 1; j < m; ++j) acc = acc * NeutroNumber::indeterminacy(k);
    if (acc != NeutroNumber::indeterminacy(k)) o.fail("I^" + std::to_string(m) + " != I");
    const double u = g.real(-5, 5), v = g.real(-5, 5);
    const NeutroNumber cu(u), cv(v);
    if ((cu + cv) != NeutroNumber(u + v) || (cu - cv) != NeutroNumber(u - v) ||
        (cu * cv) != NeutroNumber(u * v)) {
      o.fail("crisp embedding");
    }
  }
  return o;
}

// ---------------------------------------------------------------- funcmodel

inline Outcome thick_eval_contains_envelopes(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const auto p = g.poly(g.integer(0, 3)), q = g.poly(g.integer(0, 3));
    const FuncSpec f = FuncSpec::thick(poly_expr(p), poly_expr(q));
    const double x = g.real(-3, 3);
    const RealSet v = eval_at(f, x).as_set();
    const double u = poly_at(p, x), w = poly_at(q, x);
    auto in = [&](double y) { return v.inf() <= y + 1e-9 && y - 1e-9 <= v.sup(); };
    if (!in(u) || !in(w) || v.inf() > v.sup()) o.fail("thick value " + str(v));
  }
  return o;
}

inline Outcome compose_respects_eval(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const auto p = g.poly(g.integer(0, 2)), q = g.poly(g.integer(0, 2)), r = g.poly(1);
    const FuncSpec f = g.coin() ? FuncSpec::crisp(poly_expr(p))
                                : FuncSpec::thick(poly_expr(p), poly_expr(r));
    const FuncSpec inner = FuncSpec::crisp(poly_expr(q));
    const double x = g.real(-2, 2);
    const NeutroValue direct = eval_at(compose(f, inner), x);
    const NeutroValue fanout = eval(f, eval_at(inner, x));
    if (!same_branches(direct, fanout, 1e-9)) {
      o.fail("compose at " + std::to_string(x) + ": " + to_string(direct) + " vs " + to_string(fanout));
    }
  }
  return o;
}

inline FuncSpec random_table(Gen& g, bool crisp) {
  std::vector<TableRow> rows;
  const int m = g.integer(1, 6);
  std::set<double> used;
  for (int j = 0; j < m; ++j) {
    double a = g.integer(-10, 10);
    if (crisp && !used.insert(a).second) continue;
    const RealSet arg = crisp || g.coin() ? RealSet::point(a) : g.finite_points(3, -10, 10);
    const RealSet val = crisp || g.coin() ? RealSet::point(g.integer(-5, 5)) : g.set(-5, 5);
    rows.push_back({arg, val, {}});
  }
  return FuncSpec::table(rows);
}

// The relation as (argument point, values related to it).
inline std::map<double, RealSet> point_graph(const FuncSpec& t) {
  std::map<double, RealSet> out;
  for (const auto& row : t.as<spec::Table>()->rows) {
    for (double a : row.arg.isolated_points()) out[a] = unite(out[a], row.val);
  }
  return out;
}

inline Outcome table_inversion_and_class(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const FuncSpec t = random_table(g, g.coin());
    const FuncSpec back = invert(invert(t));
    if (!back.as<spec::Table>()) {
      o.fail("double inverse is not a table");
      continue;
    }
    // Compare point by point, rows for the same argument merged.
    if (point_graph(back) != point_graph(t)) o.fail("invert twice changed " + to_string(t));
    const FuncSpec crisp = random_table(g, true);
    if (classify_relation(crisp) != RelationClass::CrispFunction) {
      o.fail("classical table misclassified " + to_string(crisp));
    }
  }
  return o;
}

inline Outcome alternatives_branch_count(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const int m = g.integer(1, 3), k = g.integer(1, 3);
    std::vector<FuncSpec> fs, gs;
    for (int j = 0; j < m; ++j) fs.push_back(FuncSpec::crisp(Expr::var() + Expr::constant(10.0 * j)));
    for (int j = 0; j < k; ++j) gs.push_back(FuncSpec::crisp(Expr::var() * Expr::constant(j + 2.0)));
    const FuncSpec c = compose(FuncSpec::alternatives(fs), FuncSpec::alternatives(gs));
    const NeutroValue v = eval_at(c, 1.0 + g.real(0, 1) * 1e-3);
    if (v.size() != static_cast<std::size_t>(m * k)) {
      o.fail(std::to_string(m) + "x" + std::to_string(k) + " gave " + std::to_string(v.size()));
    }
  }
  return o;
}

// ---------------------------------------------------------------- textparse

inline Expr random_leaf(Gen& g) {
  switch (g.integer(0, 3)) {
    case 0: return Expr::constant(g.integer(1, 40) / 8.0);
    case 1: return Expr::constant(-g.integer(1, 40) / 8.0);
    case 2: {
      const Interval iv = g.interval(-5, 5);
      return Expr::set(RealSet::normalize(std::vector<Interval>{iv}));
    }
    default: return Expr::nn(NeutroNumber::indeterminacy(g.integer(1, 3), g.integer(1, 6) * (g.coin() ? 1 : -1)));
  }
}

// An expression that mentions x, so the parser's constant folding leaves it
// alone.
inline Expr random_expr(Gen& g, int depth) {
  if (depth == 0) return Expr::var();
  auto sub = [&] { return random_expr(g, depth - 1); };
  switch (g.integer(0, 8)) {
    case 0:
    case 1: {
      const auto op = static_cast<BinaryOp>(g.integer(0, 3));
      Expr other = g.coin() ? sub() : random_leaf(g);
      return g.coin() ? Expr::binary(op, sub(), other) : Expr::binary(op, other, sub());
    }
    case 2: {
      static constexpr UnaryOp fns[] = {UnaryOp::Exp, UnaryOp::Ln, UnaryOp::Sqrt, UnaryOp::Sin,
                                        UnaryOp::Cos, UnaryOp::Abs};
      return Expr::unary(fns[g.integer(0, 5)], sub());
    }
    case 3: {
      int k = g.integer(-3, 5);
      if (k == 0 || k == 1) k = 2;
      return Expr::pow(sub(), k);
    }
    case 4: return -sub();
    case 5: return Expr::alternatives({sub(), sub()});
    case 6: return Expr::band(sub(), g.coin() ? sub() : random_leaf(g), g.coin(), g.coin());
    case 7: {
      Expr base = g.coin() ? Expr::constant(g.coin() ? 2 : 10) : Expr::set(RealSet::closed(2, 3));
      return Expr::log(base, sub());
    }
    default: return Expr::power(sub(), sub());
  }
}

inline Outcome parser_round_trip(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const Expr e = random_expr(g, g.integer(1, 4));
    const std::string text = to_string(e);
    try {
      const Expr back = parse_expr(text);
      if (!(back == e)) o.fail(text + " reparsed as " + to_string(back));
      if (!(parse_expr(text) == back)) o.fail("non-deterministic parse of " + text);
    } catch (const Error& err) {
      o.fail(text + ": " + err.what());
    }
  }
  return o;
}

inline NeutroValue random_value(Gen& g) {
  std::vector<Branch> bs;
  const int m = g.integer(1, 3);
  for (int j = 0; j < m; ++j) {
    Branch b;
    switch (g.integer(0, 3)) {
      case 0: b = g.set(); break;
      case 1: b = RealSet::point(g.real(-100, 100)); break;
      case 2: {
        RealSet s = RealSet::interval(g.grid(-5, 0), g.grid(0.5, 5), false, true);
        b = s.with_membership(s.sup(), {g.integer(0, 10) / 10.0, g.integer(0, 10) / 10.0,
                                        g.integer(0, 10) / 10.0});
        break;
      }
      default: b = random_nn(g, g.coin()); break;
    }
    b = canonical_branch(b);
    const bool dup = std::any_of(bs.begin(), bs.end(), [&](const Branch& x) { return x == b; });
    if (!dup) bs.push_back(b);
  }
  return NeutroValue(bs);
}

inline Outcome value_round_trip(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const NeutroValue v = random_value(g);
    const std::string text = render(v);
    try {
      const NeutroValue back = parse_value(text);
      if (!(back == v)) o.fail(text + " reparsed as " + render(back));
    } catch (const Error& err) {
      o.fail(text + ": " + err.what());
    }
  }
  return o;
}

// ---------------------------------------------------------------- limits

inline FuncSpec random_thick(Gen& g, int max_degree = 3) {
  const auto p = g.poly(g.integer(0, max_degree));
  const auto q = g.poly(g.integer(0, max_degree));
  return FuncSpec::thick(poly_expr(p), poly_expr(q));
}

inline Outcome limit_consistency(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    FuncSpec f;
    const int kind = g.integer(0, 2);
    if (kind == 0) {
      f = random_thick(g);
    } else if (kind == 1) {
      const Interval left[] = {Interval{-INFINITY, 0, true, false}};
      const Interval right[] = {Interval{0, INFINITY, true, true}};
      f = FuncSpec::piecewise({Piece{Region::from(left), random_thick(g)},
                               Piece{Region::from(right), random_thick(g)}});
    } else {
      f = FuncSpec::crisp(poly_expr(g.poly(3)));
    }
    const double c = kind == 1 ? 0.0 : g.grid(-2, 2);
    const LimitOutcome full = full_limit(f, c);
    const LimitOutcome mereo = mereo_limit(f, c);
    if (full.is_finite() &&
        !(mereo.is_finite() && eta_metric(full.value(), mereo.value()) <= 1e-6)) {
      o.fail("full " + to_string(full) + " but mereo " + to_string(mereo));
    }
    if (kind == 2) {
      const double direct = eval_at(f, c).as_set().inf();
      if (!full.is_finite() || std::abs(full.value().inf() - direct) > 1e-6) {
        o.fail("crisp polynomial limit " + to_string(full) + " vs " + std::to_string(direct));
      }
    }
  }
  return o;
}

inline Outcome limit_scaling(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const FuncSpec f = random_thick(g);
    double alpha = g.grid(-4, 4);
    if (alpha == 0) alpha = 1.5;
    const double c = g.grid(-2, 2);
    const Side side = g.coin() ? Side::Left : Side::Right;
    const LimitOutcome base = directional_limit(f, c, side);
    const LimitOutcome scaled = directional_limit(FuncSpec::scaled(alpha, f), c, side);
    if (!base.is_finite() || !scaled.is_finite()) {
      o.fail("non-finite limit of a thick polynomial");
      continue;
    }
    const RealSet expect = scale(alpha, base.value());
    if (eta_metric(expect, scaled.value()) > 1e-5 * std::max(1.0, std::abs(alpha))) {
      o.fail("scaling: " + str(expect) + " vs " + str(scaled.value()));
    }
  }
  return o;
}

inline Outcome param_containment(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  // (x^2 + b x - alpha x - b alpha)/(x + b) = x - alpha away from x = -b.
  for (int i = 0; i < n; ++i, ++o.cases) {
    const double b = g.integer(1, 5);
    const double p = g.grid(-3, 3);
    const double q = p + g.grid(0, 3);
    const Expr x = Expr::var(), al = Expr::param(), bb = Expr::constant(b);
    const Expr templ = (Expr::pow(x, 2) + bb * x - al * x - bb * al) / (x + bb);
    try {
      const LimitOutcome hull = interval_param_limit(templ, p, q, -b);
      const double lp = -b - p, lq = -b - q;
      if (!hull.is_finite() || !hull.value().contains(lp) || !hull.value().contains(lq) ||
          std::abs(hull.value().inf() - lq) > 1e-6 || std::abs(hull.value().sup() - lp) > 1e-6) {
        o.fail("hull " + to_string(hull) + " for alpha in [" + std::to_string(p) + "," +
               std::to_string(q) + "]");
      }
    } catch (const Error& e) {
      o.fail(e.what());
    }
  }
  return o;
}

// ---------------------------------------------------------------- contin

inline Outcome closure_property(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  static constexpr ClosureOp ops[] = {ClosureOp::Add, ClosureOp::Sub, ClosureOp::Mul, ClosureOp::Div};
  for (int i = 0; i < n; ++i, ++o.cases) {
    const FuncSpec f = random_thick(g);
    const auto p = g.poly(g.integer(0, 2)), q = g.poly(g.integer(0, 2));
    // Offset keeps the divisor away from 0 on [-2,2].
    const double off = 40.0;
    const FuncSpec gs = FuncSpec::thick(poly_expr(p) + Expr::constant(off),
                                        poly_expr(q) + Expr::constant(off));
    const double c = g.grid(-2, 2);
    for (ClosureOp op : ops) {
      try {
        if (!check_closure(f, gs, c, op)) o.fail("closure fails at c=" + std::to_string(c));
      } catch (const Error& e) {
        o.fail(e.what());
      }
    }
  }
  return o;
}

inline Outcome continuous_implies_mereo(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const FuncSpec f = random_thick(g);
    const double c = g.grid(-2, 2);
    const ContinuityClass k = classify_at(f, c);
    if (k.kind != ContinuityClass::Kind::Continuous) {
      o.fail("thick polynomial not continuous: " + to_string(k));
      continue;
    }
    const LimitOutcome m = mereo_limit(f, c);
    if (!m.is_finite() || eta_metric(m.value(), eval_at(f, c).as_set()) > 1e-6) {
      o.fail("mereo limit " + to_string(m));
    }
  }
  return o;
}

// Thick polynomial with a positive band width, on a random [a,b].
struct IvtCase {
  FuncSpec f;
  double a;
  double b;
  double m;
  double M;
};

inline IvtCase random_ivt_case(Gen& g) {
  const auto p = g.poly(g.integer(1, 3));
  const double w = g.grid(0.25, 2);
  IvtCase c{FuncSpec::thick(poly_expr(p), poly_expr(p) + Expr::constant(w)), g.grid(-2, 0),
            g.grid(0.25, 2), 0, 0};
  const double fa = poly_at(p, c.a), fb = poly_at(p, c.b);
  c.m = std::min(fa, fb);
  c.M = std::max(fa, fb) + w;
  return c;
}

inline Outcome ivt_find_verified(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const IvtCase t = random_ivt_case(g);
    const double k = g.real(t.m, t.M);
    try {
      const double c = ivt_find(t.f, t.a, t.b, k);
      if (c < t.a || c > t.b || !eval_at(t.f, c).contains(k)) {
        o.fail("witness " + std::to_string(c) + " misses k=" + std::to_string(k));
      }
      const double finer = ivt_find(t.f, t.a, t.b, k, 2048);
      if (finer > c + 1e-9) o.fail("finer grid lost the witness " + std::to_string(c));
    } catch (const Error& e) {
      o.fail(e.what());
    }
  }
  return o;
}

inline Outcome ivt_cover_covers(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const IvtCase t = random_ivt_case(g);
    double k1 = g.real(t.m, t.M), k2 = g.real(t.m, t.M);
    if (k1 > k2) std::swap(k1, k2);
    try {
      std::vector<double> cs;
      try {
        cs = ivt_cover(t.f, t.a, t.b, k1, k2, 256);
      } catch (const Error& e) {
        // NotFound means the grid was too coarse; a finer one must succeed.
        if (e.code() != Errc::NotFound) throw;
        cs = ivt_cover(t.f, t.a, t.b, k1, k2, 8192);
      }
      RealSet uni;
      for (double c : cs) uni = unite(uni, eval_at(t.f, c).as_set());
      if (!is_subset(RealSet::closed(k1, k2), uni) || !std::is_sorted(cs.begin(), cs.end())) {
        o.fail("cover misses [" + std::to_string(k1) + "," + std::to_string(k2) + "]");
      }
    } catch (const Error& e) {
      o.fail(e.what());
    }
  }
  return o;
}

// ---------------------------------------------------------------- calc

inline Outcome derivative_vs_differences(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const auto p = g.poly(g.integer(0, 4)), q = g.poly(g.integer(0, 4));
    const FuncSpec f = FuncSpec::thick(poly_expr(p), poly_expr(q));
    const double x = g.real(-2, 2);
    const RealSet d = eval_at(derivative_thick(f), x).as_set();
    const double dp = centered_difference([&](double t) { return poly_at(p, t); }, x);
    const double dq = centered_difference([&](double t) { return poly_at(q, t); }, x);
    const RealSet oracle = RealSet::closed(std::min(dp, dq), std::max(dp, dq));
    const double scale_ = std::max(1.0, mu_norm(oracle));
    if (eta_metric(d, oracle) / scale_ >= 1e-4) o.fail(str(d) + " vs " + str(oracle));
  }
  return o;
}

inline Outcome riemann_convergence(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const auto p = g.poly(g.integer(1, 3)), q = g.poly(g.integer(1, 3));
    const FuncSpec f = FuncSpec::thick(poly_expr(p), poly_expr(q));
    const double a = g.grid(-2, 0), b = a + g.grid(0.5, 2);
    // Bound on |f'| over [a,b] from the oracle polynomials.
    std::vector<double> dp, dq;
    for (std::size_t k = 1; k < p.size(); ++k) dp.push_back(p[k] * k);
    for (std::size_t k = 1; k < q.size(); ++k) dq.push_back(q[k] * k);
    if (dp.empty()) dp.push_back(0);
    if (dq.empty()) dq.push_back(0);
    double m1 = 0;
    for (int s = 0; s <= 400; ++s) {
      const double x = a + (b - a) * s / 400;
      m1 = std::max({m1, std::abs(poly_at(dp, x)), std::abs(poly_at(dq, x))});
    }
    m1 = m1 * 1.1 + 1e-9;
    for (int cells : {64, 256}) {
      const RealSet r1 = integrate_thick(f, a, b, {cells, Rule::LeftEndpoint});
      const RealSet r2 = integrate_thick(f, a, b, {2 * cells, Rule::LeftEndpoint});
      const double gap = eta_metric(r1, r2);
      if (gap * cells > (b - a) * (b - a) * m1) {
        o.fail("n*|R(n)-R(2n)| = " + std::to_string(gap * cells) + " at n=" + std::to_string(cells));
      }
    }
  }
  return o;
}

inline Outcome fundamental_theorem(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const auto p = g.poly(g.integer(1, 4));
    const FuncSpec f = FuncSpec::crisp(poly_expr(p));
    const double a = g.grid(-2, 0), b = a + g.grid(0.25, 2);
    const RealSet r = integrate_thick(derivative_thick(f), a, b, {10000, Rule::Midpoint});
    const double expect = poly_at(p, b) - poly_at(p, a);
    if (std::abs(r.inf() - expect) > 1e-6 || std::abs(r.sup() - expect) > 1e-6) {
      o.fail(str(r) + " vs " + std::to_string(expect));
    }
  }
  return o;
}

inline Outcome nn_derivative_inverts_antiderivative(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    Polynomial p;
    const int deg = g.integer(0, 5);
    for (int k = 0; k <= deg; ++k) {
      p = p + Polynomial::monomial(random_nn(g, false), k);
    }
    const FuncSpec f = FuncSpec::nn(to_expr(p));
    const Polynomial back = nn_polynomial(derivative_nn(FuncSpec::nn(to_expr(
        antiderivative_nn(f).primitive))));
    for (int k = 0; k <= deg; ++k) {
      if (!nn_near(back.coefficient(k), p.coefficient(k), 1e-9)) {
        o.fail("coefficient " + std::to_string(k) + " of " + to_string(p));
        break;
      }
    }
  }
  return o;
}

inline Outcome setbounds_matches_thick(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const FuncSpec f = random_thick(g, 2);
    const double a = g.grid(-2, 0), b = a + g.grid(0.25, 2);
    const IntegralConfig cfg{512, Rule::Midpoint};
    const RealSet s = integrate_setbounds(f, RealSet::point(a), RealSet::point(b), cfg);
    const RealSet t = integrate_thick(f, a, b, cfg);
    if (eta_metric(s, t) > 1e-6) o.fail(str(s) + " vs " + str(t));
  }
  return o;
}

inline Outcome widening_is_monotone(std::uint64_t seed, int n) {
  Gen g(seed);
  Outcome o;
  for (int i = 0; i < n; ++i, ++o.cases) {
    const auto p = g.poly(g.integer(0, 3)), q = g.poly(g.integer(0, 3));
    const double eps = g.grid(0.25, 1);
    const Expr lo = poly_expr(p), hi = poly_expr(q);
    const FuncSpec f = FuncSpec::thick(lo, hi);
    // Push both envelopes outwards pointwise: min - eps and max + eps.
    const Expr mn = (lo + hi - Expr::unary(UnaryOp::Abs, lo - hi)) / Expr::constant(2.0);
    const Expr mx = (lo + hi + Expr::unary(UnaryOp::Abs, lo - hi)) / Expr::constant(2.0);
    const FuncSpec wide = FuncSpec::thick(mn - Expr::constant(eps), mx + Expr::constant(eps));
    const double a = g.grid(-2, 0), b = a + g.grid(0.25, 2);
    const IntegralConfig cfg{256, Rule::Midpoint};
    const RealSet narrow = integrate_thick(f, a, b, cfg);
    const RealSet broad = integrate_thick(wide, a, b, cfg);
    if (!(broad.inf() <= narrow.inf() + 1e-9 && narrow.sup() <= broad.sup() + 1e-9)) {
      o.fail(str(narrow) + " not inside " + str(broad));
    }
  }
  return o;
}

}  // namespace neutro::testing
