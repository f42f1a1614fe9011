#include "neutro/funcops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "neutro/error.hpp"
#include "neutro/evaluate.hpp"

namespace neutro {

FuncSpec compose(const FuncSpec& f, const FuncSpec& g) {
  if (const auto* alt = g.as<spec::Alternatives>()) {
    std::vector<FuncSpec> out;
    for (const auto& b : alt->branches) out.push_back(compose(f, b));
    return FuncSpec::alternatives(std::move(out));
  }
  if (const auto* alt = f.as<spec::Alternatives>()) {
    std::vector<FuncSpec> out;
    for (const auto& b : alt->branches) out.push_back(compose(b, g));
    return FuncSpec::alternatives(std::move(out));
  }
  const Expr* inner = nullptr;
  if (const auto* c = g.as<spec::Crisp>()) inner = &c->body;
  if (const auto* c = g.as<spec::NNExpr>()) inner = &c->body;
  if (inner && !has_alternatives(*inner)) {
    if (const auto* c = f.as<spec::Crisp>()) return FuncSpec::from_expr(substitute(c->body, *inner));
    if (const auto* c = f.as<spec::NNExpr>()) return FuncSpec::nn(substitute(c->body, *inner));
    if (const auto* t = f.as<spec::Thick>()) {
      return FuncSpec::thick(substitute(t->lower, *inner), substitute(t->upper, *inner), t->lo_open,
                             t->hi_open);
    }
  }
  return FuncSpec::composed(f, g);
}

namespace {

int count_x(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Var>) {
          return 1;
        } else if constexpr (std::is_same_v<T, ast::Unary>) {
          return count_x(n.arg);
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          return count_x(n.lhs) + count_x(n.rhs);
        } else if constexpr (std::is_same_v<T, ast::Pow>) {
          return count_x(n.base);
        } else if constexpr (std::is_same_v<T, ast::Power>) {
          return count_x(n.base) + count_x(n.exponent);
        } else if constexpr (std::is_same_v<T, ast::Log>) {
          return count_x(n.base) + count_x(n.arg);
        } else if constexpr (std::is_same_v<T, ast::Or> || std::is_same_v<T, ast::Band>) {
          return 2;  // never solved symbolically
        } else {
          return 0;
        }
      },
      e.node().v);
}

// Solves e(x) = t for x, with x occurring once in e.
std::optional<Expr> peel(const Expr& e, const Expr& t) {
  if (e.as<ast::Var>()) return t;
  if (const auto* u = e.as<ast::Unary>()) {
    switch (u->op) {
      case UnaryOp::Neg: return peel(u->arg, -t);
      case UnaryOp::Exp: return peel(u->arg, Expr::unary(UnaryOp::Ln, t));
      case UnaryOp::Ln: return peel(u->arg, Expr::unary(UnaryOp::Exp, t));
      case UnaryOp::Sqrt: return peel(u->arg, Expr::pow(t, 2));
      default: return std::nullopt;
    }
  }
  if (const auto* b = e.as<ast::Binary>()) {
    const bool left = depends_on_x(b->lhs);
    const Expr& other = left ? b->rhs : b->lhs;
    const Expr& sub = left ? b->lhs : b->rhs;
    switch (b->op) {
      case BinaryOp::Add: return peel(sub, t - other);
      case BinaryOp::Sub: return left ? peel(sub, t + other) : peel(sub, other - t);
      case BinaryOp::Mul: return peel(sub, t / other);
      case BinaryOp::Div: return left ? peel(sub, t * other) : peel(sub, other / t);
    }
  }
  if (const auto* p = e.as<ast::Pow>()) {
    if (p->exponent == 1) return peel(p->base, t);
    if (p->exponent == -1) return peel(p->base, Expr::constant(1.0) / t);
    return std::nullopt;
  }
  if (const auto* p = e.as<ast::Power>()) {
    if (depends_on_x(p->exponent)) return peel(p->exponent, Expr::log(p->base, t));
    return peel(p->base, Expr::power(t, Expr::constant(1.0) / p->exponent));
  }
  if (const auto* l = e.as<ast::Log>()) {
    if (depends_on_x(l->arg)) return peel(l->arg, Expr::power(l->base, t));
    return peel(l->base, Expr::power(l->arg, Expr::constant(1.0) / t));
  }
  return std::nullopt;
}

Expr invert_or_throw(const Expr& e) {
  auto inv = invert_expr(e);
  if (!inv) throw Error(Errc::NotSupported, "cannot invert " + to_string(e));
  return *inv;
}

// Points p when the region is R minus finitely many points.
std::optional<std::vector<double>> punctured_points(const Region& d) {
  const auto& ps = d.pieces();
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (ps.empty() || ps.front().lo != -inf || ps.back().hi != inf) return std::nullopt;
  std::vector<double> holes;
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    if (ps[i].hi != ps[i + 1].lo || !ps[i].hi_open || !ps[i + 1].lo_open) return std::nullopt;
    holes.push_back(ps[i].hi);
  }
  return holes;
}

RealSet image_union(const NeutroValue& v) {
  try {
    return v.set_union();
  } catch (const Error&) {
    throw Error(Errc::NotSupported, "indeterminate values cannot be inverted");
  }
}

FuncSpec invert_piecewise(const spec::Piecewise& pw) {
  std::vector<Piece> pieces;
  for (const auto& p : pw.pieces) {
    Region dom;
    if (auto holes = punctured_points(p.domain)) {
      std::vector<double> images;
      for (double h : *holes) {
        const RealSet img = image_union(eval_at(p.body, h));
        if (!img.intervals().empty()) {
          throw Error(Errc::NotSupported, "excluded point maps to an interval");
        }
        images.insert(images.end(), img.isolated_points().begin(), img.isolated_points().end());
      }
      dom = Region::all().without(images);
    } else if (p.domain.is_bounded()) {
      const RealSet arg = RealSet::normalize(p.domain.pieces());
      dom = Region::of(image_union(eval(p.body, Branch(arg))));
    } else {
      throw Error(Errc::NotSupported, "cannot invert a piece on " + to_string(p.domain));
    }
    pieces.push_back({dom, invert(p.body)});
  }
  std::vector<SetPiece> set_pieces;
  for (const auto& sp : pw.set_pieces) {
    const RealSet img = image_union(eval(sp.body, Branch(sp.argument)));
    const Expr arg = sp.argument.is_point() ? Expr::constant(sp.argument.inf())
                                            : Expr::set(sp.argument);
    set_pieces.push_back({img, FuncSpec::crisp(arg)});
  }
  return FuncSpec::piecewise(std::move(pieces), std::move(set_pieces));
}

}  // namespace

std::optional<Expr> invert_expr(const Expr& e) {
  if (count_x(e) != 1) return std::nullopt;
  return peel(e, Expr::var());
}

FuncSpec invert(const FuncSpec& f) {
  if (const auto* c = f.as<spec::Crisp>()) return FuncSpec::crisp(invert_or_throw(c->body));
  if (const auto* t = f.as<spec::Thick>()) {
    return FuncSpec::thick(invert_or_throw(t->lower), invert_or_throw(t->upper), t->lo_open,
                           t->hi_open);
  }
  if (const auto* a = f.as<spec::Alternatives>()) {
    std::vector<FuncSpec> out;
    for (const auto& b : a->branches) out.push_back(invert(b));
    return FuncSpec::alternatives(std::move(out));
  }
  if (const auto* t = f.as<spec::Table>()) {
    std::vector<TableRow> rows;
    for (const auto& r : t->rows) {
      auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& q) { return q.arg == r.val; });
      if (it == rows.end()) {
        rows.push_back({r.val, r.arg, r.tag});
      } else {
        it->val = unite(it->val, r.arg);
      }
    }
    return FuncSpec::table(std::move(rows));
  }
  if (const auto* pw = f.as<spec::Piecewise>()) return invert_piecewise(*pw);
  throw Error(Errc::NotSupported, "cannot invert " + to_string(f));
}

RelationClass classify_relation(const FuncSpec& f) {
  const auto* t = f.as<spec::Table>();
  if (!t) throw Error(Errc::NotSupported, "relation classification needs a table");
  bool crisp = true;
  for (std::size_t i = 0; i < t->rows.size(); ++i) {
    const auto& r = t->rows[i];
    if (!r.arg.is_point() || !r.val.is_point()) crisp = false;
    for (std::size_t j = i + 1; j < t->rows.size(); ++j) {
      if (t->rows[j].arg != r.arg) continue;
      crisp = false;
      if (t->rows[j].val != r.val) return RelationClass::GeneralRelation;
    }
  }
  return crisp ? RelationClass::CrispFunction : RelationClass::SubsetFunction;
}

namespace {

std::optional<NeutroValue> try_eval(const FuncSpec& f, const Branch& at) {
  try {
    return eval(f, at);
  } catch (const Error&) {
    return std::nullopt;
  }
}

void special_arguments(const FuncSpec& f, std::vector<RealSet>& out) {
  if (const auto* pw = f.as<spec::Piecewise>()) {
    for (const auto& sp : pw->set_pieces) out.push_back(sp.argument);
  }
  if (const auto* t = f.as<spec::Table>()) {
    for (const auto& r : t->rows) out.push_back(r.arg);
  }
  if (const auto* a = f.as<spec::Alternatives>()) {
    for (const auto& b : a->branches) special_arguments(b, out);
  }
}

}  // namespace

Parity parity(const FuncSpec& f, const RealSet& domain, int samples) {
  if (domain.empty() || !approx_equal(domain, negate(domain), 1e-12)) {
    throw Error(Errc::DomainError, to_string(domain) + " is not symmetric about 0");
  }
  std::vector<RealSet> args;
  const double lo = domain.inf();
  const double hi = domain.sup();
  const int n = std::max(samples, 2);
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    if (domain.contains(x) && domain.contains(-x)) args.push_back(RealSet::point(x));
  }
  std::vector<RealSet> special;
  special_arguments(f, special);
  for (const auto& s : special) {
    args.push_back(s);
    if (s.intervals().empty()) {
      for (double p : s.isolated_points()) args.push_back(RealSet::point(p));
    }
  }
  bool even = true;
  bool odd = true;
  for (const auto& s : args) {
    const auto fx = try_eval(f, Branch(s));
    const auto fm = try_eval(f, Branch(negate(s)));
    if (!fx && !fm) continue;
    if (!fx || !fm) return Parity::Neither;
    even = even && same_branches(*fm, *fx);
    odd = odd && same_branches(*fm, negate(*fx));
    if (!even && !odd) return Parity::Neither;
  }
  if (even) return Parity::Even;
  return odd ? Parity::Odd : Parity::Neither;
}

namespace {

struct Probe {
  bool member = false;
  int sign = 0;  // +1 / -1 when every branch lies strictly on one side of 0
};

Probe probe(const FuncSpec& f, double x) {
  Probe p;
  NeutroValue v;
  try {
    v = eval_at(f, x);
  } catch (const Error&) {
    return p;
  }
  int sign = 0;
  bool mixed = false;
  for (const auto& b : v.branches()) {
    const auto* s = std::get_if<RealSet>(&b);
    if (!s) {
      mixed = true;
      continue;
    }
    if (s->contains(0.0)) {
      p.member = true;
      return p;
    }
    const int sb = s->inf() > 0 ? 1 : (s->sup() < 0 ? -1 : 0);
    if (sb == 0 || (sign != 0 && sb != sign)) mixed = true;
    sign = sb;
  }
  p.sign = mixed ? 0 : sign;
  return p;
}

// Rounds to the shortest decimal within the refinement tolerance.
double snap(double x) {
  for (int d = 0; d <= 9; ++d) {
    const double scale = std::pow(10.0, d);
    const double r = std::round(x * scale) / scale;
    if (std::abs(r - x) <= 2e-9) return r == 0.0 ? 0.0 : r;
  }
  return x;
}

constexpr double kZeroTol = 1e-9;

// Boundary between a non-member `out` and a member `in`.
double refine_member(const FuncSpec& f, double out, double in) {
  while (std::abs(in - out) > kZeroTol / 4) {
    const double mid = 0.5 * (in + out);
    if (probe(f, mid).member) {
      in = mid;
    } else {
      out = mid;
    }
  }
  return in;
}

double refine_sign(const FuncSpec& f, double a, double b, int sa) {
  while (std::abs(b - a) > kZeroTol / 4) {
    const double mid = 0.5 * (a + b);
    const Probe p = probe(f, mid);
    if (p.member) return mid;
    if (p.sign == sa) {
      a = mid;
    } else if (p.sign == -sa) {
      b = mid;
    } else {
      break;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

RealSet zeros(const FuncSpec& f, const RealSet& search, int grid) {
  std::vector<Interval> found;
  std::vector<double> points;
  for (double p : search.isolated_points()) {
    if (probe(f, p).member) points.push_back(p);
  }
  const int n = std::max(grid, 2);
  for (const auto& piece : search.intervals()) {
    std::vector<double> xs(n + 1);
    std::vector<Probe> ps(n + 1);
    for (int i = 0; i <= n; ++i) {
      xs[i] = i == n ? piece.hi : piece.lo + (piece.hi - piece.lo) * i / n;
      ps[i] = probe(f, xs[i]);
    }
    for (int i = 0; i <= n;) {
      if (ps[i].member) {
        int j = i;
        while (j + 1 <= n && ps[j + 1].member) ++j;
        const double l = i > 0 ? refine_member(f, xs[i - 1], xs[i]) : xs[i];
        const double r = j < n ? refine_member(f, xs[j + 1], xs[j]) : xs[j];
        const double sl = snap(l);
        const double sr = snap(r);
        if (sl == sr) {
          points.push_back(sl);
        } else {
          found.push_back(Interval::closed(sl, sr));
        }
        i = j + 1;
        continue;
      }
      if (i < n && !ps[i + 1].member && ps[i].sign * ps[i + 1].sign < 0) {
        points.push_back(snap(refine_sign(f, xs[i], xs[i + 1], ps[i].sign)));
      }
      ++i;
    }
  }
  return intersect(RealSet::normalize(found, points), search.without_memberships());
}

const char* to_string(RelationClass c) {
  switch (c) {
    case RelationClass::CrispFunction: return "crisp function";
    case RelationClass::SubsetFunction: return "subset function";
    case RelationClass::GeneralRelation: return "general relation";
  }
  return "?";
}

const char* to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Neither: return "neither";
  }
  return "?";
}

}  // namespace neutro
