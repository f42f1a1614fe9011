#include "neutro/polynomial.hpp"

#include <cmath>
#include <vector>

#include "neutro/error.hpp"

namespace neutro {

Polynomial Polynomial::constant(const NeutroNumber& c) { return monomial(c, 0); }

Polynomial Polynomial::monomial(const NeutroNumber& c, int power) {
  Polynomial p;
  p.add_term(power, c);
  return p;
}

NeutroNumber Polynomial::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? NeutroNumber() : it->second;
}

void Polynomial::add_term(int power, const NeutroNumber& c) {
  NeutroNumber sum = coefficient(power) + c;
  if (sum == NeutroNumber()) {
    terms_.erase(power);
  } else {
    terms_[power] = sum;
  }
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

Polynomial Polynomial::operator-() const { return scaled(-1.0); }

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [i, x] : a.terms_) {
    for (const auto& [j, y] : b.terms_) r.add_term(i + j, x * y);
  }
  return r;
}

Polynomial Polynomial::pow(int n) const {
  Polynomial r = constant(NeutroNumber(1.0));
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::scaled(double c) const {
  Polynomial r;
  for (const auto& [k, v] : terms_) r.add_term(k, v.scaled(c));
  return r;
}

Polynomial Polynomial::derivative() const {
  Polynomial r;
  for (const auto& [k, v] : terms_) {
    if (k > 0) r.add_term(k - 1, v.scaled(k));
  }
  return r;
}

Polynomial Polynomial::antiderivative() const {
  Polynomial r;
  for (const auto& [k, v] : terms_) r.add_term(k + 1, v.divided_by(k + 1));
  return r;
}

NeutroNumber Polynomial::at(const NeutroNumber& x) const {
  NeutroNumber acc;
  for (const auto& [k, v] : terms_) acc = acc + v * x.pow(k);
  return acc;
}

std::optional<Polynomial> to_polynomial(const Expr& e) {
  using P = std::optional<Polynomial>;
  return std::visit(
      [&](const auto& n) -> P {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Const>) {
          return Polynomial::constant(NeutroNumber(n.value));
        } else if constexpr (std::is_same_v<T, ast::NN>) {
          return Polynomial::constant(n.value);
        } else if constexpr (std::is_same_v<T, ast::Var>) {
          return Polynomial::x();
        } else if constexpr (std::is_same_v<T, ast::Unary>) {
          if (n.op != UnaryOp::Neg) return std::nullopt;
          P a = to_polynomial(n.arg);
          if (!a) return std::nullopt;
          return -*a;
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          P a = to_polynomial(n.lhs);
          P b = to_polynomial(n.rhs);
          if (!a || !b) return std::nullopt;
          switch (n.op) {
            case BinaryOp::Add: return *a + *b;
            case BinaryOp::Sub: return *a - *b;
            case BinaryOp::Mul: return *a * *b;
            case BinaryOp::Div: {
              if (b->degree() != 0) return std::nullopt;
              const NeutroNumber d = b->coefficient(0);
              if (!d.is_crisp() || d.determinate() == 0.0) return std::nullopt;
              return a->scaled(1.0 / d.determinate());
            }
          }
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, ast::Pow>) {
          if (n.exponent < 0) return std::nullopt;
          P a = to_polynomial(n.base);
          if (!a) return std::nullopt;
          return a->pow(n.exponent);
        } else if constexpr (std::is_same_v<T, ast::Power>) {
          const double* p = constant_value(n.exponent);
          if (!p || *p < 0 || std::floor(*p) != *p || *p > 64) return std::nullopt;
          P a = to_polynomial(n.base);
          if (!a) return std::nullopt;
          return a->pow(static_cast<int>(*p));
        } else {
          return std::nullopt;
        }
      },
      e.node().v);
}

namespace {

// p/d with a small denominator when c is such a fraction.
bool small_fraction(double c, double& p, double& d) {
  if (std::floor(c) == c) return false;
  for (int den = 2; den <= 12; ++den) {
    const double num = c * den;
    const double r = std::round(num);
    if (std::abs(num - r) <= 1e-9 * std::max(1.0, std::abs(num))) {
      p = r;
      d = den;
      return true;
    }
  }
  return false;
}

// Signed monomial c*x^n.
Expr monomial_expr(double c, int n) {
  std::optional<Expr> base;
  if (n == 1) base = Expr::var();
  if (n > 1) base = Expr::pow(Expr::var(), n);
  double p = 0.0;
  double d = 1.0;
  if (small_fraction(c, p, d)) {
    Expr num = Expr::constant(p);
    if (base) {
      if (p == 1.0) {
        num = *base;
      } else if (p == -1.0) {
        num = -*base;
      } else {
        num = Expr::constant(p) * *base;
      }
    }
    return num / Expr::constant(d);
  }
  if (!base) return Expr::constant(c);
  if (c == 1.0) return *base;
  if (c == -1.0) return -*base;
  return Expr::constant(c) * *base;
}

struct Term {
  double coeff;
  Expr magnitude;  // expression for |coeff| * x^n (times I_k)
  Expr signed_expr;
};

Expr join(const std::vector<Term>& terms) {
  Expr acc = terms.front().signed_expr;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    acc = terms[i].coeff < 0 ? acc - terms[i].magnitude : acc + terms[i].magnitude;
  }
  return acc;
}

}  // namespace

Expr to_expr(const Polynomial& p) {
  if (p.is_zero()) return Expr::constant(0.0);
  // Split into the determinate polynomial and one polynomial per index.
  std::map<int, std::vector<std::pair<int, double>>> groups;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [n, c] = *it;
    if (c.determinate() != 0.0) groups[0].emplace_back(n, c.determinate());
    for (const auto& [k, b] : c.indeterminate()) groups[k].emplace_back(n, b);
  }
  std::vector<Term> terms;
  for (const auto& [k, mons] : groups) {
    if (k == 0) {
      for (const auto& [n, c] : mons) {
        terms.push_back({c, monomial_expr(std::abs(c), n), monomial_expr(c, n)});
      }
      continue;
    }
    const Expr sym = Expr::nn(NeutroNumber::indeterminacy(k));
    if (mons.size() == 1) {
      const auto [n, c] = mons.front();
      auto with_sym = [&](double v) {
        if (n == 0 && v == 1.0) return sym;
        if (n == 0 && v == -1.0) return -sym;
        return monomial_expr(v, n) * sym;
      };
      terms.push_back({c, with_sym(std::abs(c)), with_sym(c)});
      continue;
    }
    std::vector<Term> inner;
    for (const auto& [n, c] : mons) {
      inner.push_back({c, monomial_expr(std::abs(c), n), monomial_expr(c, n)});
    }
    const Expr grouped = join(inner) * sym;
    terms.push_back({1.0, grouped, grouped});
  }
  return join(terms);
}

std::string to_string(const Polynomial& p) { return to_string(to_expr(p)); }

namespace {

bool is_const(const Expr& e, double v) {
  const double* c = constant_value(e);
  return c && *c == v;
}

Expr fold(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Unary>) {
          Expr a = simplify(n.arg);
          if (n.op == UnaryOp::Neg) {
            if (const double* c = constant_value(a)) return Expr::constant(-*c);
            if (const auto* inner = a.as<ast::Unary>(); inner && inner->op == UnaryOp::Neg) {
              return inner->arg;
            }
          }
          return Expr::unary(n.op, a);
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          Expr a = simplify(n.lhs);
          Expr b = simplify(n.rhs);
          const double* ca = constant_value(a);
          const double* cb = constant_value(b);
          switch (n.op) {
            case BinaryOp::Add:
              if (ca && cb) return Expr::constant(*ca + *cb);
              if (is_const(a, 0.0)) return b;
              if (is_const(b, 0.0)) return a;
              break;
            case BinaryOp::Sub:
              if (ca && cb) return Expr::constant(*ca - *cb);
              if (is_const(b, 0.0)) return a;
              if (is_const(a, 0.0)) return simplify(-b);
              break;
            case BinaryOp::Mul:
              if (ca && cb) return Expr::constant(*ca * *cb);
              if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
              if (is_const(a, 1.0)) return b;
              if (is_const(b, 1.0)) return a;
              break;
            case BinaryOp::Div:
              if (ca && cb && *cb != 0.0) return Expr::constant(*ca / *cb);
              if (is_const(b, 1.0)) return a;
              if (is_const(a, 0.0) && !(cb && *cb == 0.0)) return Expr::constant(0.0);
              break;
          }
          return Expr::binary(n.op, a, b);
        } else if constexpr (std::is_same_v<T, ast::Pow>) {
          Expr a = simplify(n.base);
          if (n.exponent == 0) return Expr::constant(1.0);
          if (n.exponent == 1) return a;
          if (const double* c = constant_value(a); c && !(*c == 0.0 && n.exponent < 0)) {
            return Expr::constant(std::pow(*c, n.exponent));
          }
          return Expr::pow(a, n.exponent);
        } else if constexpr (std::is_same_v<T, ast::Power>) {
          Expr a = simplify(n.base);
          Expr b = simplify(n.exponent);
          if (const double* p = constant_value(b);
              p && std::floor(*p) == *p && std::abs(*p) <= 64) {
            return simplify(Expr::pow(a, static_cast<int>(*p)));
          }
          return Expr::power(a, b);
        } else if constexpr (std::is_same_v<T, ast::Log>) {
          return Expr::log(simplify(n.base), simplify(n.arg));
        } else if constexpr (std::is_same_v<T, ast::Or>) {
          std::vector<Expr> opts;
          for (const auto& o : n.options) opts.push_back(simplify(o));
          return Expr::alternatives(std::move(opts));
        } else if constexpr (std::is_same_v<T, ast::Band>) {
          return Expr::band(simplify(n.lo), simplify(n.hi), n.lo_open, n.hi_open);
        } else {
          return e;
        }
      },
      e.node().v);
}

}  // namespace

Expr simplify(const Expr& e) {
  try {
    if (auto p = to_polynomial(e)) return to_expr(*p);
  } catch (const Error&) {
    // A product of distinct subindeterminacies stays unexpanded.
  }
  return fold(e);
}

}  // namespace neutro
