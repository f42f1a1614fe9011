#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "neutro/neutronum.hpp"
#include "neutro/realset.hpp"

namespace neutro {

enum class UnaryOp { Neg, Exp, Ln, Sqrt, Sin, Cos, Abs };
enum class BinaryOp { Add, Sub, Mul, Div };

struct ExprNode;

/// Immutable expression tree in the single free variable x.  Copies share
/// nodes, so values are cheap to pass around and safe to share across
/// threads.
class Expr {
 public:
  /// The constant 0.
  Expr();

  static Expr constant(double value);
  static Expr set(RealSet value);
  static Expr nn(NeutroNumber value);
  static Expr var();
  /// The interval parameter (alpha) of parametrized limit templates.
  static Expr param();
  static Expr unary(UnaryOp op, Expr arg);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  /// base^n with an integer literal exponent.
  static Expr pow(Expr base, int exponent);
  /// base^exponent for a general exponent; evaluated as exp(exponent * ln base).
  static Expr power(Expr base, Expr exponent);
  static Expr log(Expr base, Expr arg);
  /// Discrete alternatives "a or b or ...".  A single alternative collapses.
  static Expr alternatives(std::vector<Expr> options);
  /// A thick value [lo, hi] whose ends are themselves expressions; the
  /// envelopes may cross, evaluation orders them pointwise.
  static Expr band(Expr lo, Expr hi, bool lo_open = false, bool hi_open = false);

  [[nodiscard]] const ExprNode& node() const noexcept { return *node_; }
  template <class T>
  [[nodiscard]] const T* as() const noexcept;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

namespace ast {
struct Const {
  double value;
  friend bool operator==(const Const&, const Const&) = default;
};
struct Set {
  RealSet value;
  friend bool operator==(const Set&, const Set&) = default;
};
struct NN {
  NeutroNumber value;
  friend bool operator==(const NN&, const NN&) = default;
};
struct Var {
  friend bool operator==(const Var&, const Var&) = default;
};
struct Param {
  friend bool operator==(const Param&, const Param&) = default;
};
struct Unary {
  UnaryOp op;
  Expr arg;
  friend bool operator==(const Unary&, const Unary&) = default;
};
struct Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};
struct Pow {
  Expr base;
  int exponent;
  friend bool operator==(const Pow&, const Pow&) = default;
};
struct Power {
  Expr base;
  Expr exponent;
  friend bool operator==(const Power&, const Power&) = default;
};
struct Log {
  Expr base;
  Expr arg;
  friend bool operator==(const Log&, const Log&) = default;
};
struct Or {
  std::vector<Expr> options;
  friend bool operator==(const Or&, const Or&) = default;
};
struct Band {
  Expr lo;
  Expr hi;
  bool lo_open;
  bool hi_open;
  friend bool operator==(const Band&, const Band&) = default;
};
}  // namespace ast

struct ExprNode {
  std::variant<ast::Const, ast::Set, ast::NN, ast::Var, ast::Param, ast::Unary, ast::Binary,
               ast::Pow, ast::Power, ast::Log, ast::Or, ast::Band>
      v;
};

template <class T>
const T* Expr::as() const noexcept {
  return std::get_if<T>(&node_->v);
}

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

[[nodiscard]] bool depends_on_x(const Expr& e);
[[nodiscard]] bool has_param(const Expr& e);
[[nodiscard]] bool has_alternatives(const Expr& e);
[[nodiscard]] bool has_indeterminacy(const Expr& e);
[[nodiscard]] bool has_set_constant(const Expr& e);
/// Numeric constant value if `e` is a plain Const node.
[[nodiscard]] const double* constant_value(const Expr& e);

/// Replaces every x by `replacement`.
Expr substitute(const Expr& e, const Expr& replacement);
/// Replaces the parameter by the constant `alpha`.
Expr bind_param(const Expr& e, double alpha);

/// Text in the expression grammar; parse_expr(to_string(e)) rebuilds e.
std::string to_string(const Expr& e);

}  // namespace neutro
