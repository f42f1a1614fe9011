#include "neutro/calc.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "neutro/error.hpp"
#include "neutro/evaluate.hpp"

namespace neutro {

namespace {

Expr zero() { return Expr::constant(0.0); }

Expr d(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Var>) {
          return Expr::constant(1.0);
        } else if constexpr (std::is_same_v<T, ast::Unary>) {
          const Expr& u = n.arg;
          const Expr du = d(u);
          switch (n.op) {
            case UnaryOp::Neg: return -du;
            case UnaryOp::Exp: return Expr::unary(UnaryOp::Exp, u) * du;
            case UnaryOp::Ln: return du / u;
            case UnaryOp::Sqrt:
              return du / (Expr::constant(2.0) * Expr::unary(UnaryOp::Sqrt, u));
            case UnaryOp::Sin: return Expr::unary(UnaryOp::Cos, u) * du;
            case UnaryOp::Cos: return -(Expr::unary(UnaryOp::Sin, u) * du);
            case UnaryOp::Abs: break;
          }
          throw Error(Errc::NotSupported, "abs is not differentiable symbolically");
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          const Expr du = d(n.lhs);
          const Expr dv = d(n.rhs);
          switch (n.op) {
            case BinaryOp::Add: return du + dv;
            case BinaryOp::Sub: return du - dv;
            case BinaryOp::Mul: return du * n.rhs + n.lhs * dv;
            case BinaryOp::Div: return (du * n.rhs - n.lhs * dv) / Expr::pow(n.rhs, 2);
          }
          return zero();
        } else if constexpr (std::is_same_v<T, ast::Pow>) {
          if (n.exponent == 0) return zero();
          return Expr::constant(n.exponent) * Expr::pow(n.base, n.exponent - 1) * d(n.base);
        } else if constexpr (std::is_same_v<T, ast::Power>) {
          const Expr& u = n.base;
          const Expr& v = n.exponent;
          if (!depends_on_x(v)) {
            return v * Expr::power(u, v - Expr::constant(1.0)) * d(u);
          }
          const Expr lnu = Expr::unary(UnaryOp::Ln, u);
          if (!depends_on_x(u)) return e * lnu * d(v);
          return e * (d(v) * lnu + v * d(u) / u);
        } else if constexpr (std::is_same_v<T, ast::Log>) {
          return d(Expr::unary(UnaryOp::Ln, n.arg) / Expr::unary(UnaryOp::Ln, n.base));
        } else if constexpr (std::is_same_v<T, ast::Or>) {
          std::vector<Expr> opts;
          for (const auto& o : n.options) opts.push_back(d(o));
          return Expr::alternatives(std::move(opts));
        } else if constexpr (std::is_same_v<T, ast::Band>) {
          return Expr::band(d(n.lo), d(n.hi), false, false);
        } else {
          return zero();
        }
      },
      e.node().v);
}

RealSet value_set(const FuncSpec& f, double x) { return eval_at(f, x).set_union(); }

}  // namespace

Expr differentiate(const Expr& e) { return simplify(d(e)); }

FuncSpec derivative_thick(const FuncSpec& f) {
  if (const auto* c = f.as<spec::Crisp>()) return FuncSpec::crisp(differentiate(c->body));
  if (const auto* t = f.as<spec::Thick>()) {
    return FuncSpec::thick(differentiate(t->lower), differentiate(t->upper));
  }
  if (const auto* a = f.as<spec::Alternatives>()) {
    std::vector<FuncSpec> bs;
    for (const auto& b : a->branches) bs.push_back(derivative_thick(b));
    return FuncSpec::alternatives(std::move(bs));
  }
  if (f.as<spec::NNExpr>()) return derivative_nn(f);
  throw Error(Errc::NotSupported, "derivative needs a formula, thick or alternatives spec");
}

DerivClass derivative_classify(const FuncSpec& f, double c, double tol) {
  FuncSpec left = f;
  FuncSpec right = f;
  if (const auto* p = f.as<spec::Piecewise>()) {
    const double delta = 1e-9 * std::max(1.0, std::abs(c));
    auto find = [&](double x) -> FuncSpec {
      for (const auto& piece : p->pieces) {
        if (piece.domain.contains(x)) return piece.body;
      }
      throw Error(Errc::NotSupported, "no piece next to " + format_number(c));
    };
    left = find(c - delta);
    right = find(c + delta);
  }
  DerivClass out;
  try {
    out.left = value_set(derivative_thick(left), c);
    out.right = value_set(derivative_thick(right), c);
  } catch (const Error& e) {
    if (e.code() == Errc::NotSupported) throw;
    throw Error(Errc::NotSupported, std::string("derivative not evaluable: ") + e.what());
  }
  if (eta_metric(out.left, out.right) <= tol) {
    out.kind = DerivClass::Kind::Differentiable;
    out.value = out.left;
  } else if (RealSet w = intersect(out.left, out.right); !w.empty()) {
    out.kind = DerivClass::Kind::MereoDerivative;
    out.value = std::move(w);
  }
  return out;
}

Polynomial nn_polynomial(const FuncSpec& f) {
  const Expr* body = nullptr;
  if (const auto* n = f.as<spec::NNExpr>()) body = &n->body;
  if (const auto* c = f.as<spec::Crisp>()) body = &c->body;
  if (!body) throw Error(Errc::NotSupported, "expected a polynomial with I coefficients");
  auto p = to_polynomial(*body);
  if (!p) throw Error(Errc::NotSupported, "not a polynomial: " + to_string(*body));
  return *p;
}

FuncSpec derivative_nn(const FuncSpec& f) {
  return FuncSpec::nn(to_expr(nn_polynomial(f).derivative()));
}

Antiderivative antiderivative_nn(const FuncSpec& f) {
  const Polynomial p = nn_polynomial(f);
  bool refined = false;
  for (const auto& [k, c] : p.terms()) {
    for (const auto& [idx, b] : c.indeterminate()) refined = refined || idx != 1;
  }
  return {p.antiderivative(), refined ? "a + b*I" : "C"};
}

std::string to_string(const Antiderivative& a) {
  return to_string(a.primitive) + " + " + a.constant;
}

namespace {

struct Sums {
  double lo = 0.0;
  double hi = 0.0;
};

void accumulate(Sums& s, const RealSet& v, double w) {
  s.lo += v.inf() * w;
  s.hi += v.sup() * w;
}

RealSet sample(const FuncSpec& f, const Branch& at) {
  try {
    return eval(f, at).set_union();
  } catch (const Error& e) {
    throw Error(Errc::IntegrationError, std::string("evaluation failed: ") + e.what());
  }
}

double offset(Rule r) { return r == Rule::Midpoint ? 0.5 : 0.0; }

// Plain double envelopes when the spec allows it.
struct ScalarEnvelopes {
  const Expr* lo = nullptr;
  const Expr* hi = nullptr;
};

std::optional<ScalarEnvelopes> scalar_envelopes(const FuncSpec& f) {
  if (const auto* c = f.as<spec::Crisp>(); c && is_scalar(c->body)) {
    return ScalarEnvelopes{&c->body, &c->body};
  }
  if (const auto* t = f.as<spec::Thick>(); t && is_scalar(t->lower) && is_scalar(t->upper)) {
    return ScalarEnvelopes{&t->lower, &t->upper};
  }
  return std::nullopt;
}

RealSet sample_fast(const FuncSpec& f, const std::optional<ScalarEnvelopes>& env, double x) {
  if (!env) return sample(f, RealSet::point(x));
  try {
    const double u = eval_scalar(*env->lo, x);
    const double v = env->lo == env->hi ? u : eval_scalar(*env->hi, x);
    if (!std::isfinite(u) || !std::isfinite(v)) throw Error(Errc::DomainError, "non-finite value");
    return RealSet::closed(std::min(u, v), std::max(u, v));
  } catch (const Error& e) {
    throw Error(Errc::IntegrationError, std::string("evaluation failed: ") + e.what());
  }
}

Sums riemann(const FuncSpec& f, double a, double b, int n, Rule rule) {
  const auto env = scalar_envelopes(f);
  std::set<double> cuts{a, b};
  if (const auto* p = f.as<spec::Piecewise>()) {
    for (const auto& piece : p->pieces) {
      for (const Interval& iv : piece.domain.pieces()) {
        for (double e : {iv.lo, iv.hi}) {
          if (e > a && e < b) cuts.insert(e);
        }
      }
    }
  }
  Sums s;
  const std::vector<double> pts(cuts.begin(), cuts.end());
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    const double lo = pts[j];
    const double len = pts[j + 1] - lo;
    const int cells = std::max(1, static_cast<int>(std::lround(n * len / (b - a))));
    const double h = len / cells;
    for (int i = 0; i < cells; ++i) {
      const double x = lo + (i + offset(rule)) * h;
      accumulate(s, sample_fast(f, env, x), h);
    }
  }
  return s;
}

void check_n(const IntegralConfig& cfg) {
  if (cfg.n < 1) throw Error(Errc::PreconditionError, "n must be at least 1");
}

}  // namespace

IntegralReport integrate_thick_report(const FuncSpec& f, double a, double b,
                                      const IntegralConfig& cfg) {
  check_n(cfg);
  if (!(a < b)) throw Error(Errc::InvalidBounds, "need a < b");
  const Sums fine = riemann(f, a, b, cfg.n, cfg.rule);
  const Sums coarse = riemann(f, a, b, std::max(1, cfg.n / 2), cfg.rule);
  const double denom = cfg.rule == Rule::Midpoint ? 3.0 : 1.0;
  const double elo = fine.lo + (fine.lo - coarse.lo) / denom;
  const double ehi = fine.hi + (fine.hi - coarse.hi) / denom;
  IntegralReport r;
  r.value = RealSet::closed(fine.lo, fine.hi);
  r.coarse = RealSet::closed(coarse.lo, coarse.hi);
  r.extrapolated = RealSet::closed(elo, ehi);
  r.error_estimate = std::max(std::abs(elo - fine.lo), std::abs(ehi - fine.hi));
  return r;
}

RealSet integrate_thick(const FuncSpec& f, double a, double b, const IntegralConfig& cfg) {
  check_n(cfg);
  if (!(a < b)) throw Error(Errc::InvalidBounds, "need a < b");
  const Sums s = riemann(f, a, b, cfg.n, cfg.rule);
  return RealSet::closed(s.lo, s.hi);
}

Interpretations integral_interpretations(double lower, double upper) {
  if (lower > upper) throw Error(Errc::InvalidBounds, "lower exceeds upper");
  return {lower, 0.5 * (lower + upper), upper};
}

RealSet integrate_setbounds(const FuncSpec& f, const RealSet& A, const RealSet& B,
                            const IntegralConfig& cfg) {
  check_n(cfg);
  if (A.empty() || B.empty()) throw Error(Errc::InvalidBounds, "empty bound");
  if (A.inf() > B.inf() || A.sup() > B.sup()) {
    throw Error(Errc::InvalidBounds, "need inf A <= inf B and sup A <= sup B");
  }
  const double w = eta_metric(B, A) / cfg.n;
  if (w == 0.0) return RealSet::point(0.0);
  Sums s;
  for (int i = 0; i < cfg.n; ++i) {
    const double t = (i + offset(cfg.rule)) / cfg.n;
    const double lo = A.inf() + t * (B.inf() - A.inf());
    const double hi = A.sup() + t * (B.sup() - A.sup());
    accumulate(s, sample(f, RealSet::closed(lo, hi)), w);
  }
  return RealSet::closed(s.lo, s.hi);
}

std::string to_string(const DerivClass& d) {
  switch (d.kind) {
    case DerivClass::Kind::Differentiable: return "differentiable, derivative " + to_string(d.value);
    case DerivClass::Kind::MereoDerivative: return "mereo-derivative " + to_string(d.value);
    case DerivClass::Kind::NotDifferentiable: break;
  }
  return "not differentiable (left " + to_string(d.left) + ", right " + to_string(d.right) + ")";
}

}  // namespace neutro
