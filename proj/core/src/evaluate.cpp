#include "neutro/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "neutro/error.hpp"

namespace neutro {

namespace {

using Branches = std::vector<Branch>;

NeutroNumber as_nn(const Branch& b) {
  if (const auto* n = std::get_if<NeutroNumber>(&b)) return *n;
  const auto& s = std::get<RealSet>(b);
  if (!s.is_point()) {
    throw Error(Errc::NotSupported, "cannot combine the set " + to_string(s) +
                                        " with an indeterminate number");
  }
  return NeutroNumber(s.inf());
}

Branch combine(SetOp op, const Branch& a, const Branch& b) {
  const auto* sa = std::get_if<RealSet>(&a);
  const auto* sb = std::get_if<RealSet>(&b);
  if (sa && sb) return set_arith(op, *sa, *sb);
  const NeutroNumber x = as_nn(a);
  const NeutroNumber y = as_nn(b);
  switch (op) {
    case SetOp::Add: return canonical_branch(x + y);
    case SetOp::Sub: return canonical_branch(x - y);
    case SetOp::Mul: return canonical_branch(x * y);
    case SetOp::Div: return canonical_branch(x / y);
  }
  return a;
}

SetOp set_op(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return SetOp::Add;
    case BinaryOp::Sub: return SetOp::Sub;
    case BinaryOp::Mul: return SetOp::Mul;
    case BinaryOp::Div: return SetOp::Div;
  }
  return SetOp::Add;
}

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "negation";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Ln: return "ln";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Abs: return "abs";
  }
  return "?";
}

Branch apply_unary(UnaryOp op, const Branch& a) {
  if (const auto* n = std::get_if<NeutroNumber>(&a)) {
    if (op == UnaryOp::Neg) return canonical_branch(-*n);
    throw Error(Errc::NotSupported,
                std::string(unary_name(op)) + " of indeterminate number " + to_string(*n));
  }
  const auto& s = std::get<RealSet>(a);
  switch (op) {
    case UnaryOp::Neg: return negate(s);
    case UnaryOp::Exp: return set_exp(s);
    case UnaryOp::Ln: return set_ln(s);
    case UnaryOp::Sqrt: return set_sqrt(s);
    case UnaryOp::Sin: return set_sin(s);
    case UnaryOp::Cos: return set_cos(s);
    case UnaryOp::Abs: return set_abs(s);
  }
  return a;
}

Branch apply_pow(const Branch& a, int n) {
  if (const auto* x = std::get_if<NeutroNumber>(&a)) return canonical_branch(x->pow(n));
  return set_pow(std::get<RealSet>(a), n);
}

// An exponent that is a small integer point takes the exact integer power path.
const RealSet* integer_point(const Branch& b, int& n) {
  const auto* s = std::get_if<RealSet>(&b);
  if (!s || !s->is_point()) return nullptr;
  const double v = s->inf();
  if (std::floor(v) != v || std::abs(v) > 64) return nullptr;
  n = static_cast<int>(v);
  return s;
}

Branch apply_power(const Branch& base, const Branch& expo) {
  int n = 0;
  if (integer_point(expo, n)) return apply_pow(base, n);
  const auto* sb = std::get_if<RealSet>(&base);
  const auto* se = std::get_if<RealSet>(&expo);
  if (!sb || !se) throw Error(Errc::NotSupported, "non-integer power of an indeterminate number");
  if (sb->inf() <= 0.0) {
    throw Error(Errc::DomainError, "power with base " + to_string(*sb) + " not positive");
  }
  return set_exp(set_arith(SetOp::Mul, *se, set_ln(*sb)));
}

Branch apply_log(const Branch& base, const Branch& arg) {
  const auto* sb = std::get_if<RealSet>(&base);
  const auto* sa = std::get_if<RealSet>(&arg);
  if (!sb || !sa) throw Error(Errc::NotSupported, "logarithm of an indeterminate number");
  return set_arith(SetOp::Div, set_ln(*sa), set_ln(*sb));
}

Branch apply_band(const Branch& lo, const Branch& hi, bool lo_open, bool hi_open) {
  const auto* l = std::get_if<RealSet>(&lo);
  const auto* h = std::get_if<RealSet>(&hi);
  if (!l || !h) throw Error(Errc::NotSupported, "thick value with an indeterminate envelope");
  if (l->is_point() && h->is_point()) {
    const Interval iv = Interval::make(l->inf(), h->inf(), lo_open, hi_open);
    return RealSet::normalize(std::span(&iv, 1));
  }
  // Envelopes evaluated on a set: hull of both, ends open only where no
  // contributing envelope attains them.
  const double a = std::min(l->inf(), h->inf());
  const double b = std::max(l->sup(), h->sup());
  const bool a_hit = (l->inf() == a && l->inf_attained()) || (h->inf() == a && h->inf_attained());
  const bool b_hit = (l->sup() == b && l->sup_attained()) || (h->sup() == b && h->sup_attained());
  return RealSet::interval(a, b, !a_hit, !b_hit);
}

template <class F>
Branches cartesian(const Branches& a, const Branches& b, F&& f) {
  Branches out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(f(x, y));
  }
  return out;
}

Branches ev(const Expr& e, const Branch& x) {
  return std::visit(
      [&](const auto& n) -> Branches {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Const>) {
          return {RealSet::point(n.value)};
        } else if constexpr (std::is_same_v<T, ast::Set>) {
          return {n.value};
        } else if constexpr (std::is_same_v<T, ast::NN>) {
          return {n.value};
        } else if constexpr (std::is_same_v<T, ast::Var>) {
          return {x};
        } else if constexpr (std::is_same_v<T, ast::Param>) {
          throw Error(Errc::NotSupported, "unbound parameter alpha");
        } else if constexpr (std::is_same_v<T, ast::Unary>) {
          Branches out = ev(n.arg, x);
          for (auto& b : out) b = apply_unary(n.op, b);
          return out;
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          const SetOp op = set_op(n.op);
          return cartesian(ev(n.lhs, x), ev(n.rhs, x),
                           [op](const Branch& a, const Branch& b) { return combine(op, a, b); });
        } else if constexpr (std::is_same_v<T, ast::Pow>) {
          Branches out = ev(n.base, x);
          for (auto& b : out) b = apply_pow(b, n.exponent);
          return out;
        } else if constexpr (std::is_same_v<T, ast::Power>) {
          return cartesian(ev(n.base, x), ev(n.exponent, x), apply_power);
        } else if constexpr (std::is_same_v<T, ast::Log>) {
          return cartesian(ev(n.base, x), ev(n.arg, x), apply_log);
        } else if constexpr (std::is_same_v<T, ast::Or>) {
          Branches out;
          for (const auto& o : n.options) {
            Branches part = ev(o, x);
            out.insert(out.end(), part.begin(), part.end());
          }
          return out;
        } else {
          static_assert(std::is_same_v<T, ast::Band>);
          return cartesian(ev(n.lo, x), ev(n.hi, x), [&n](const Branch& a, const Branch& b) {
            return apply_band(a, b, n.lo_open, n.hi_open);
          });
        }
      },
      e.node().v);
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(Errc::DomainError, std::string(what) + " is not finite");
  return v;
}

double scalar(const Expr& e, double x) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Const>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, ast::Var>) {
          return x;
        } else if constexpr (std::is_same_v<T, ast::Unary>) {
          const double a = scalar(n.arg, x);
          switch (n.op) {
            case UnaryOp::Neg: return -a;
            case UnaryOp::Exp: return finite_or_throw(std::exp(a), "exp");
            case UnaryOp::Ln:
              if (a <= 0.0) throw Error(Errc::DomainError, "ln of " + format_number(a));
              return std::log(a);
            case UnaryOp::Sqrt:
              if (a < 0.0) throw Error(Errc::DomainError, "sqrt of " + format_number(a));
              return std::sqrt(a);
            case UnaryOp::Sin: return std::sin(a);
            case UnaryOp::Cos: return std::cos(a);
            case UnaryOp::Abs: return std::abs(a);
          }
          return a;
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          const double a = scalar(n.lhs, x);
          const double b = scalar(n.rhs, x);
          switch (n.op) {
            case BinaryOp::Add: return finite_or_throw(a + b, "sum");
            case BinaryOp::Sub: return finite_or_throw(a - b, "difference");
            case BinaryOp::Mul: return finite_or_throw(a * b, "product");
            case BinaryOp::Div:
              if (b == 0.0) throw Error(Errc::DivisionBySetContainingZero, "division by {0}");
              return finite_or_throw(a / b, "quotient");
          }
          return a;
        } else if constexpr (std::is_same_v<T, ast::Pow>) {
          const double a = scalar(n.base, x);
          if (a == 0.0 && n.exponent < 0) {
            throw Error(Errc::DivisionBySetContainingZero, "division by {0}");
          }
          return finite_or_throw(std::pow(a, n.exponent), "power");
        } else if constexpr (std::is_same_v<T, ast::Power>) {
          const double a = scalar(n.base, x);
          const double p = scalar(n.exponent, x);
          if (std::floor(p) == p && std::abs(p) <= 64) {
            if (a == 0.0 && p < 0) throw Error(Errc::DivisionBySetContainingZero, "division by {0}");
            return finite_or_throw(std::pow(a, p), "power");
          }
          if (a <= 0.0) throw Error(Errc::DomainError, "power with base " + format_number(a));
          return finite_or_throw(std::exp(p * std::log(a)), "power");
        } else if constexpr (std::is_same_v<T, ast::Log>) {
          const double b = scalar(n.base, x);
          const double a = scalar(n.arg, x);
          if (a <= 0.0 || b <= 0.0) throw Error(Errc::DomainError, "logarithm outside its domain");
          const double lb = std::log(b);
          if (lb == 0.0) throw Error(Errc::DivisionBySetContainingZero, "logarithm base 1");
          return std::log(a) / lb;
        } else {
          throw Error(Errc::NotSupported, "expression is not scalar");
        }
      },
      e.node().v);
}

bool same_argument(const RealSet& a, const RealSet& b) {
  return a.without_memberships() == b.without_memberships();
}

bool point_in_finite(const RealSet& arg, const RealSet& query) {
  return query.is_point() && arg.intervals().empty() && arg.contains(query.inf());
}

Branches unite_branchwise(const std::vector<Branches>& parts) {
  if (parts.size() == 1) return parts.front();
  const std::size_t n = parts.front().size();
  for (const auto& p : parts) {
    if (p.size() != n) {
      throw Error(Errc::NotSupported, "argument spans pieces with different branch counts");
    }
  }
  Branches out;
  for (std::size_t i = 0; i < n; ++i) {
    RealSet acc;
    for (const auto& p : parts) {
      const auto* s = std::get_if<RealSet>(&p[i]);
      if (!s) throw Error(Errc::NotSupported, "indeterminate value across pieces");
      acc = unite(acc, *s);
    }
    out.emplace_back(std::move(acc));
  }
  return out;
}

Branches ev_spec(const FuncSpec& f, const Branch& at);

Branches ev_piecewise(const spec::Piecewise& pw, const Branch& at) {
  const auto* s = std::get_if<RealSet>(&at);
  if (!s) throw Error(Errc::DomainError, "piecewise function at an indeterminate number");
  for (const auto& sp : pw.set_pieces) {
    if (same_argument(sp.argument, *s)) return ev_spec(sp.body, at);
  }
  for (const auto& sp : pw.set_pieces) {
    if (point_in_finite(sp.argument, *s)) return ev_spec(sp.body, at);
  }
  if (s->empty()) throw Error(Errc::DomainError, "empty argument");
  std::vector<Branches> parts;
  RealSet covered;
  for (const auto& p : pw.pieces) {
    RealSet part = p.domain.clip(s->without_memberships());
    if (part.empty()) continue;
    parts.push_back(ev_spec(p.body, part));
    covered = unite(covered, part);
  }
  if (parts.empty() || !(covered == s->without_memberships())) {
    throw Error(Errc::DomainError, to_string(*s) + " is outside the domain");
  }
  return unite_branchwise(parts);
}

Branches ev_table(const spec::Table& t, const Branch& at) {
  const auto* s = std::get_if<RealSet>(&at);
  if (!s) throw Error(Errc::DomainError, "table lookup at an indeterminate number");
  Branches out;
  auto add = [&out](const RealSet& v) {
    for (const auto& b : out) {
      if (std::get<RealSet>(b) == v) return;
    }
    out.emplace_back(v);
  };
  for (const auto& r : t.rows) {
    if (same_argument(r.arg, *s)) add(r.val);
  }
  if (out.empty()) {
    for (const auto& r : t.rows) {
      if (point_in_finite(r.arg, *s)) add(r.val);
    }
  }
  if (out.empty()) throw Error(Errc::DomainError, "no table entry for " + to_string(*s));
  return out;
}

Branches ev_spec(const FuncSpec& f, const Branch& at) {
  const auto* pt = std::get_if<RealSet>(&at);
  const bool point = pt && pt->is_point();
  return std::visit(
      [&](const auto& n) -> Branches {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, spec::Crisp> || std::is_same_v<T, spec::NNExpr>) {
          if (point && is_scalar(n.body)) return {RealSet::point(scalar(n.body, pt->inf()))};
          return ev(n.body, at);
        } else if constexpr (std::is_same_v<T, spec::Thick>) {
          if (point && is_scalar(n.lower) && is_scalar(n.upper)) {
            const Interval iv = Interval::make(scalar(n.lower, pt->inf()),
                                               scalar(n.upper, pt->inf()), n.lo_open, n.hi_open);
            return {RealSet::normalize(std::span(&iv, 1))};
          }
          return ev(Expr::band(n.lower, n.upper, n.lo_open, n.hi_open), at);
        } else if constexpr (std::is_same_v<T, spec::Piecewise>) {
          return ev_piecewise(n, at);
        } else if constexpr (std::is_same_v<T, spec::Alternatives>) {
          Branches out;
          for (const auto& b : n.branches) {
            Branches part = ev_spec(b, at);
            out.insert(out.end(), part.begin(), part.end());
          }
          return out;
        } else if constexpr (std::is_same_v<T, spec::Table>) {
          return ev_table(n, at);
        } else if constexpr (std::is_same_v<T, spec::Composed>) {
          Branches out;
          for (const auto& mid : ev_spec(n.inner, at)) {
            Branches part = ev_spec(n.outer, mid);
            out.insert(out.end(), part.begin(), part.end());
          }
          return out;
        } else {
          static_assert(std::is_same_v<T, spec::Combined>);
          const SetOp op = n.op;
          return cartesian(ev_spec(n.lhs, at), ev_spec(n.rhs, at),
                           [op](const Branch& a, const Branch& b) { return combine(op, a, b); });
        }
      },
      f.node().v);
}

}  // namespace

bool is_scalar(const Expr& e) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Const> || std::is_same_v<T, ast::Var>) {
          return true;
        } else if constexpr (std::is_same_v<T, ast::Unary>) {
          return is_scalar(n.arg);
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          return is_scalar(n.lhs) && is_scalar(n.rhs);
        } else if constexpr (std::is_same_v<T, ast::Pow>) {
          return is_scalar(n.base);
        } else if constexpr (std::is_same_v<T, ast::Power>) {
          return is_scalar(n.base) && is_scalar(n.exponent);
        } else if constexpr (std::is_same_v<T, ast::Log>) {
          return is_scalar(n.base) && is_scalar(n.arg);
        } else {
          return false;
        }
      },
      e.node().v);
}

double eval_scalar(const Expr& e, double x) {
  if (!is_scalar(e)) throw Error(Errc::NotSupported, "expression is not scalar: " + to_string(e));
  return scalar(e, x);
}

NeutroValue eval(const Expr& e, const Branch& x) { return NeutroValue(ev(e, canonical_branch(x))); }

NeutroValue eval_constant(const Expr& e) {
  if (depends_on_x(e)) throw Error(Errc::NotSupported, to_string(e) + " depends on x");
  return eval(e, RealSet::point(0.0));
}

NeutroValue eval(const FuncSpec& f, const Branch& at) {
  return NeutroValue(ev_spec(f, canonical_branch(at)));
}

NeutroValue eval(const FuncSpec& f, const NeutroValue& at) {
  Branches out;
  for (const auto& b : at.branches()) {
    Branches part = ev_spec(f, b);
    out.insert(out.end(), part.begin(), part.end());
  }
  return NeutroValue(std::move(out));
}

NeutroValue eval_at(const FuncSpec& f, double x) { return eval(f, Branch(RealSet::point(x))); }

NeutroNumber nn_eval_rational(const Expr& num, const Expr& den, const NeutroNumber& at) {
  const NeutroValue d = eval(den, at);
  if (!d.is_determinate() || !std::holds_alternative<RealSet>(d.branches().front()) ||
      !d.as_set().is_point()) {
    throw Error(Errc::IndeterminateDenominator,
                "denominator evaluates to " + to_string(d) + ", not a crisp number");
  }
  const double c = d.as_set().inf();
  if (c == 0.0) throw Error(Errc::IndeterminateDenominator, "denominator evaluates to 0");
  const NeutroValue n = eval(num, at);
  if (!n.is_determinate()) throw Error(Errc::NotSupported, "numerator has alternatives");
  return as_nn(n.branches().front()).divided_by(c);
}

}  // namespace neutro
