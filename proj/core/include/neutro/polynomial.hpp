#pragma once

#include <map>
#include <optional>
#include <string>

#include "neutro/expr.hpp"
#include "neutro/neutronum.hpp"

namespace neutro {

/// Polynomial in x whose coefficients are indeterminacy numbers.  Zero terms
/// are not stored.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const NeutroNumber& c);
  static Polynomial monomial(const NeutroNumber& c, int power);
  static Polynomial x() { return monomial(NeutroNumber(1.0), 1); }

  [[nodiscard]] const std::map<int, NeutroNumber>& terms() const noexcept { return terms_; }
  [[nodiscard]] NeutroNumber coefficient(int power) const;
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] int degree() const noexcept { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  [[nodiscard]] Polynomial pow(int n) const;
  [[nodiscard]] Polynomial scaled(double c) const;
  [[nodiscard]] Polynomial derivative() const;
  /// Termwise power rule with zero constant of integration.
  [[nodiscard]] Polynomial antiderivative() const;
  [[nodiscard]] NeutroNumber at(const NeutroNumber& x) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(int power, const NeutroNumber& c);
  std::map<int, NeutroNumber> terms_;
};

/// Expands `e` when it is a polynomial in x (constant divisors allowed);
/// nullopt otherwise.  Products of distinct subindeterminacies throw.
std::optional<Polynomial> to_polynomial(const Expr& e);

/// Descending powers, indeterminate parts grouped per index:
/// "6*x^2 + 7", "3 - 2*x*I", "5*x^3/3 + (3*x^2/2 + x)*I".
Expr to_expr(const Polynomial& p);
std::string to_string(const Polynomial& p);

/// Constant folding and removal of neutral elements; polynomial subtrees are
/// rewritten in canonical polynomial form.
Expr simplify(const Expr& e);

}  // namespace neutro
