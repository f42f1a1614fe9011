#include "neutro/expr.hpp"

#include <cmath>

#include "neutro/error.hpp"

namespace neutro {

namespace {

std::shared_ptr<const ExprNode> make_node(auto v) { return std::make_shared<const ExprNode>(ExprNode{std::move(v)}); }

// Visits every node; stops early when `pred` returns true.
template <class Pred>
bool any_node(const Expr& e, Pred&& pred) {
  if (pred(e)) return true;
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Unary>) {
          return any_node(n.arg, pred);
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          return any_node(n.lhs, pred) || any_node(n.rhs, pred);
        } else if constexpr (std::is_same_v<T, ast::Pow>) {
          return any_node(n.base, pred);
        } else if constexpr (std::is_same_v<T, ast::Power>) {
          return any_node(n.base, pred) || any_node(n.exponent, pred);
        } else if constexpr (std::is_same_v<T, ast::Log>) {
          return any_node(n.base, pred) || any_node(n.arg, pred);
        } else if constexpr (std::is_same_v<T, ast::Or>) {
          for (const auto& o : n.options) {
            if (any_node(o, pred)) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, ast::Band>) {
          return any_node(n.lo, pred) || any_node(n.hi, pred);
        } else {
          return false;
        }
      },
      e.node().v);
}

// Rebuilds the tree bottom-up, replacing leaves through `leaf`.
template <class Leaf>
Expr rebuild(const Expr& e, Leaf&& leaf) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Unary>) {
          return Expr::unary(n.op, rebuild(n.arg, leaf));
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          return Expr::binary(n.op, rebuild(n.lhs, leaf), rebuild(n.rhs, leaf));
        } else if constexpr (std::is_same_v<T, ast::Pow>) {
          return Expr::pow(rebuild(n.base, leaf), n.exponent);
        } else if constexpr (std::is_same_v<T, ast::Power>) {
          return Expr::power(rebuild(n.base, leaf), rebuild(n.exponent, leaf));
        } else if constexpr (std::is_same_v<T, ast::Log>) {
          return Expr::log(rebuild(n.base, leaf), rebuild(n.arg, leaf));
        } else if constexpr (std::is_same_v<T, ast::Or>) {
          std::vector<Expr> opts;
          opts.reserve(n.options.size());
          for (const auto& o : n.options) opts.push_back(rebuild(o, leaf));
          return Expr::alternatives(std::move(opts));
        } else if constexpr (std::is_same_v<T, ast::Band>) {
          return Expr::band(rebuild(n.lo, leaf), rebuild(n.hi, leaf), n.lo_open, n.hi_open);
        } else {
          return leaf(e);
        }
      },
      e.node().v);
}

// Binding strength used to decide where parentheses are needed.
enum Prec { kOr = 0, kSum = 1, kTerm = 2, kUnary = 3, kPower = 4, kAtom = 5 };

int prec(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Const>) {
          return std::signbit(n.value) && n.value != 0.0 ? kUnary : kAtom;
        } else if constexpr (std::is_same_v<T, ast::NN>) {
          const auto& b = n.value.indeterminate();
          if (n.value.determinate() == 0.0 && b.size() == 1) {
            const double c = b.begin()->second;
            if (c == 1.0) return kAtom;
            return c == -1.0 ? kUnary : kTerm;
          }
          return kSum;
        } else if constexpr (std::is_same_v<T, ast::Unary>) {
          return n.op == UnaryOp::Neg ? kUnary : kAtom;
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          return n.op == BinaryOp::Add || n.op == BinaryOp::Sub ? kSum : kTerm;
        } else if constexpr (std::is_same_v<T, ast::Pow> || std::is_same_v<T, ast::Power>) {
          return kPower;
        } else if constexpr (std::is_same_v<T, ast::Or>) {
          return kOr;
        } else {
          return kAtom;
        }
      },
      e.node().v);
}

std::string render(const Expr& e);

std::string wrap(const Expr& e, bool paren) {
  std::string s = render(e);
  return paren ? "(" + s + ")" : s;
}

std::string nn_text(const NeutroNumber& v) {
  const auto& b = v.indeterminate();
  if (v.determinate() == 0.0 && b.size() == 1) {
    const auto [k, c] = *b.begin();
    std::string sym = k == 1 ? "I" : "I" + std::to_string(k);
    if (c == 1.0) return sym;
    if (c == -1.0) return "-" + sym;
    return format_number(c) + "*" + sym;
  }
  return to_string(v);
}

std::string log_base_text(const Expr& base) {
  if (const double* c = constant_value(base); c && *c >= 0 && std::floor(*c) == *c && *c < 1e15) {
    return format_number(*c);
  }
  if (base.as<ast::Set>() || base.as<ast::Band>()) return render(base);
  return "(" + render(base) + ")";
}

const char* func_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Ln: return "ln";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Abs: return "abs";
    case UnaryOp::Neg: break;
  }
  return "-";
}

std::string render(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Const>) {
          return format_number(n.value);
        } else if constexpr (std::is_same_v<T, ast::Set>) {
          return to_string(n.value);
        } else if constexpr (std::is_same_v<T, ast::NN>) {
          return nn_text(n.value);
        } else if constexpr (std::is_same_v<T, ast::Var>) {
          return "x";
        } else if constexpr (std::is_same_v<T, ast::Param>) {
          return "alpha";
        } else if constexpr (std::is_same_v<T, ast::Unary>) {
          if (n.op == UnaryOp::Neg) return "-" + wrap(n.arg, prec(n.arg) < kUnary);
          return std::string(func_name(n.op)) + "(" + render(n.arg) + ")";
        } else if constexpr (std::is_same_v<T, ast::Binary>) {
          static constexpr const char* sym[] = {" + ", " - ", "*", "/"};
          const int p = prec(e);
          return wrap(n.lhs, prec(n.lhs) < p) + sym[static_cast<int>(n.op)] +
                 wrap(n.rhs, prec(n.rhs) <= p);
        } else if constexpr (std::is_same_v<T, ast::Pow>) {
          return wrap(n.base, prec(n.base) < kAtom) + "^" + std::to_string(n.exponent);
        } else if constexpr (std::is_same_v<T, ast::Power>) {
          return wrap(n.base, prec(n.base) < kAtom) + "^" +
                 wrap(n.exponent, prec(n.exponent) < kUnary);
        } else if constexpr (std::is_same_v<T, ast::Log>) {
          return "log_" + log_base_text(n.base) + "(" + render(n.arg) + ")";
        } else if constexpr (std::is_same_v<T, ast::Or>) {
          std::string out;
          for (const auto& o : n.options) {
            if (!out.empty()) out += " or ";
            out += wrap(o, prec(o) <= kOr);
          }
          return out;
        } else {
          static_assert(std::is_same_v<T, ast::Band>);
          return std::string(n.lo_open ? "(" : "[") + render(n.lo) + ", " + render(n.hi) +
                 (n.hi_open ? ")" : "]");
        }
      },
      e.node().v);
}

}  // namespace

Expr::Expr() : node_(make_node(ast::Const{0.0})) {}

Expr Expr::constant(double value) { return Expr(make_node(ast::Const{value})); }
Expr Expr::set(RealSet value) { return Expr(make_node(ast::Set{std::move(value)})); }
Expr Expr::nn(NeutroNumber value) {
  if (value.is_crisp()) return constant(value.determinate());
  return Expr(make_node(ast::NN{std::move(value)}));
}
Expr Expr::var() { return Expr(make_node(ast::Var{})); }
Expr Expr::param() { return Expr(make_node(ast::Param{})); }
Expr Expr::unary(UnaryOp op, Expr arg) { return Expr(make_node(ast::Unary{op, std::move(arg)})); }
Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(make_node(ast::Binary{op, std::move(lhs), std::move(rhs)}));
}
Expr Expr::pow(Expr base, int exponent) { return Expr(make_node(ast::Pow{std::move(base), exponent})); }
Expr Expr::power(Expr base, Expr exponent) {
  return Expr(make_node(ast::Power{std::move(base), std::move(exponent)}));
}
Expr Expr::log(Expr base, Expr arg) { return Expr(make_node(ast::Log{std::move(base), std::move(arg)})); }
Expr Expr::alternatives(std::vector<Expr> options) {
  if (options.empty()) throw Error(Errc::NotSupported, "empty alternatives");
  if (options.size() == 1) return options.front();
  return Expr(make_node(ast::Or{std::move(options)}));
}
Expr Expr::band(Expr lo, Expr hi, bool lo_open, bool hi_open) {
  return Expr(make_node(ast::Band{std::move(lo), std::move(hi), lo_open, hi_open}));
}

bool operator==(const Expr& a, const Expr& b) {
  return a.node_ == b.node_ || a.node_->v == b.node_->v;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::unary(UnaryOp::Neg, a); }

bool depends_on_x(const Expr& e) {
  return any_node(e, [](const Expr& n) { return n.as<ast::Var>() != nullptr; });
}
bool has_param(const Expr& e) {
  return any_node(e, [](const Expr& n) { return n.as<ast::Param>() != nullptr; });
}
bool has_alternatives(const Expr& e) {
  return any_node(e, [](const Expr& n) { return n.as<ast::Or>() != nullptr; });
}
bool has_indeterminacy(const Expr& e) {
  return any_node(e, [](const Expr& n) { return n.as<ast::NN>() != nullptr; });
}
bool has_set_constant(const Expr& e) {
  return any_node(e, [](const Expr& n) {
    return n.as<ast::Set>() != nullptr || n.as<ast::Band>() != nullptr;
  });
}

const double* constant_value(const Expr& e) {
  const auto* c = e.as<ast::Const>();
  return c ? &c->value : nullptr;
}

Expr substitute(const Expr& e, const Expr& replacement) {
  return rebuild(e, [&](const Expr& leaf) { return leaf.as<ast::Var>() ? replacement : leaf; });
}

Expr bind_param(const Expr& e, double alpha) {
  return rebuild(e, [&](const Expr& leaf) {
    return leaf.as<ast::Param>() ? Expr::constant(alpha) : leaf;
  });
}

std::string to_string(const Expr& e) { return render(e); }

}  // namespace neutro
