#include "neutro/textparse.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "neutro/evaluate.hpp"

namespace neutro {

ParseError::ParseError(SourceSpan span, std::string expected, std::string found)
    : Error(Errc::ParseError, "line " + std::to_string(span.line) + ", column " +
                                  std::to_string(span.column) + ": expected " + expected +
                                  " but found " + found),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
  Number, Ident, LParen, RParen, LBracket, RBracket, LBrace, RBrace, Comma, Semi,
  Plus, Minus, Star, Slash, Caret, Less, Greater, Arrow, Question, Backslash,
  Underscore, Equals, End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  SourceSpan span;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Token> lex(std::string_view s, int first_line) {
  std::vector<Token> out;
  int line = first_line;
  int col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len, std::string text) {
    Token t;
    t.kind = k;
    t.text = std::move(text);
    t.span = {line, col, static_cast<int>(len)};
    out.push_back(std::move(t));
    i += len;
    col += static_cast<int>(len);
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    // A few typeset symbols, accepted next to their ASCII spellings.
    if (s.substr(i, 3) == "∪") { push(Tok::Ident, 3, "u"); continue; }
    if (s.substr(i, 3) == "−") { push(Tok::Minus, 3, "-"); continue; }
    if (s.substr(i, 3) == "∞") { push(Tok::Ident, 3, "inf"); continue; }
    if (s.substr(i, 2) == "α") { push(Tok::Ident, 2, "alpha"); continue; }
    if (s.substr(i, 2) == "·" || s.substr(i, 2) == "×") { push(Tok::Star, 2, "*"); continue; }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        }
      }
      Token t;
      t.kind = Tok::Number;
      t.text = std::string(s.substr(i, j - i));
      t.span = {line, col, static_cast<int>(j - i)};
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
      if (ec != std::errc() || p != t.text.data() + t.text.size()) {
        throw ParseError(t.span, "a number", "'" + t.text + "'");
      }
      out.push_back(std::move(t));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      push(Tok::Ident, j - i, std::string(s.substr(i, j - i)));
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') { push(Tok::Arrow, 2, "->"); continue; }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semi; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '<': k = Tok::Less; break;
      case '>': k = Tok::Greater; break;
      case '?': k = Tok::Question; break;
      case '\\': k = Tok::Backslash; break;
      case '_': k = Tok::Underscore; break;
      case '=': k = Tok::Equals; break;
      default:
        throw ParseError({line, col, 1}, "a token", "'" + std::string(1, c) + "'");
    }
    push(k, 1, std::string(1, c));
  }
  // End of input is reported right after the last token, not after trailing
  // blank lines.
  Token end;
  end.span = out.empty() ? SourceSpan{first_line, 1, 0}
                         : SourceSpan{out.back().span.line,
                                      out.back().span.column + out.back().span.length, 0};
  out.push_back(end);
  return out;
}

bool is_function(const std::string& s) {
  return s == "exp" || s == "ln" || s == "sqrt" || s == "sin" || s == "cos" || s == "abs";
}

UnaryOp function_op(const std::string& s) {
  if (s == "exp") return UnaryOp::Exp;
  if (s == "ln") return UnaryOp::Ln;
  if (s == "sqrt") return UnaryOp::Sqrt;
  if (s == "sin") return UnaryOp::Sin;
  if (s == "cos") return UnaryOp::Cos;
  return UnaryOp::Abs;
}

// "I", "I1", "I2", ...; returns the index or 0.
int indeterminacy_index(const std::string& s) {
  if (s.empty() || s[0] != 'I') return 0;
  if (s.size() == 1) return 1;
  int k = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return 0;
    k = k * 10 + (s[i] - '0');
    if (k > 1000000) return 0;
  }
  return k;
}

// Replaces constant subtrees by their value.
Expr fold(Expr e) {
  if (depends_on_x(e) || has_param(e) || has_alternatives(e)) return e;
  if (e.as<ast::Const>() || e.as<ast::Set>() || e.as<ast::NN>()) return e;
  try {
    const NeutroValue v = eval_constant(e);
    if (!v.is_determinate()) return e;
    const Branch& b = v.branches().front();
    if (const auto* n = std::get_if<NeutroNumber>(&b)) return Expr::nn(*n);
    const auto& s = std::get<RealSet>(b);
    if (s.is_point() && s.boundary_memberships().empty()) return Expr::constant(s.inf());
    return Expr::set(s);
  } catch (const Error&) {
    return e;  // left for evaluation to report
  }
}

struct Annotated {
  Expr value;
  std::optional<MembershipTriple> tag;
  SourceSpan span;
};

class Parser {
 public:
  Parser(std::string_view text, int first_line) : toks_(lex(text, first_line)) {}

  Expr expression() { return or_expr(); }

  void expect_end() {
    if (peek().kind != Tok::End) fail("end of input");
  }

  std::pair<std::string, FuncSpec> funcdef() {
    const Token& name = peek();
    if (name.kind != Tok::Ident) fail("a function name");
    next();
    expect(Tok::LParen, "'('");
    if (!is_ident("x")) fail("'x'");
    next();
    expect(Tok::RParen, "')'");
    expect(Tok::Equals, "'='");
    FuncSpec body = spec_body();
    expect_end();
    return {name.text, body};
  }

  Region region() {
    if (is_ident("R")) {
      next();
      Region all = Region::all();
      if (accept(Tok::Backslash)) {
        RealSet hole = set_chain(false).second;
        return all.intersect(complement(hole));
      }
      return all;
    }
    auto [pieces, finite] = set_chain(true);
    (void)finite;
    return Region::from(pieces);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(what);
  }
  bool is_ident(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == s;
  }
  [[noreturn]] void fail(const std::string& expected) const { fail_at(peek(), expected); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& expected) {
    throw ParseError(t.span, expected, t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
  }

  Expr or_expr() {
    std::vector<Expr> opts{sum()};
    while (is_ident("or")) {
      next();
      opts.push_back(sum());
    }
    return Expr::alternatives(std::move(opts));
  }

  Expr sum() {
    Expr acc = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool plus = next().kind == Tok::Plus;
      Expr rhs = term();
      acc = fold(plus ? acc + rhs : acc - rhs);
    }
    return acc;
  }

  bool starts_implicit_factor() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen:
      case Tok::LBracket:
      case Tok::LBrace:
        return true;
      case Tok::Ident:
        return t.text == "x" || t.text == "alpha" || t.text == "pi" || t.text == "log" ||
               is_function(t.text) || indeterminacy_index(t.text) > 0;
      default:
        return false;
    }
  }

  Expr term() {
    Expr acc = factor();
    for (;;) {
      if (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
        const bool mul = next().kind == Tok::Star;
        Expr rhs = factor();
        acc = fold(mul ? acc * rhs : acc / rhs);
      } else if (starts_implicit_factor()) {
        acc = fold(acc * factor());
      } else {
        return acc;
      }
    }
  }

  Expr factor() {
    if (accept(Tok::Minus)) return fold(-factor());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!accept(Tok::Caret)) return base;
    Expr expo = factor();
    if (const double* c = constant_value(expo);
        c && std::floor(*c) == *c && std::abs(*c) <= 1e6) {
      return fold(Expr::pow(base, static_cast<int>(*c)));
    }
    return fold(Expr::power(base, expo));
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        next();
        return Expr::constant(t.number);
      case Tok::LParen:
      case Tok::LBracket:
      case Tok::LBrace:
        return union_chain(bracket_atom());
      case Tok::Ident:
        return ident_atom();
      default:
        fail("an expression");
    }
  }

  Expr ident_atom() {
    const Token& t = next();
    if (t.text == "x") return Expr::var();
    if (t.text == "alpha") return Expr::param();
    if (t.text == "pi") return Expr::constant(std::numbers::pi);
    if (const int k = indeterminacy_index(t.text); k > 0) {
      return Expr::nn(NeutroNumber::indeterminacy(k));
    }
    if (is_function(t.text)) {
      expect(Tok::LParen, "'('");
      Expr arg = expression();
      expect(Tok::RParen, "')'");
      return fold(Expr::unary(function_op(t.text), arg));
    }
    if (t.text == "log") {
      expect(Tok::Underscore, "'_' and a base");
      Expr base;
      if (peek().kind == Tok::Number) {
        base = Expr::constant(next().number);
      } else if (peek().kind == Tok::LParen || peek().kind == Tok::LBracket ||
                 peek().kind == Tok::LBrace) {
        base = bracket_atom();
      } else {
        fail("a logarithm base");
      }
      expect(Tok::LParen, "'('");
      Expr arg = expression();
      expect(Tok::RParen, "')'");
      return fold(Expr::log(base, arg));
    }
    if (t.text == "inf") fail_at(t, "a finite value (inf is only allowed in piece domains)");
    fail_at(t, "an expression");
  }

  std::optional<MembershipTriple> annotation() {
    if (!accept(Tok::Less)) return std::nullopt;
    double v[3];
    for (int i = 0; i < 3; ++i) {
      if (i > 0) expect(Tok::Comma, "','");
      const Token& t = peek();
      if (t.kind != Tok::Number || t.number < 0 || t.number > 1) fail("a degree in [0,1]");
      v[i] = next().number;
    }
    expect(Tok::Greater, "'>'");
    return MembershipTriple{v[0], v[1], v[2]};
  }

  Annotated endpoint() {
    Annotated a;
    a.span = peek().span;
    a.value = or_expr();
    a.tag = annotation();
    return a;
  }

  const double* constant_endpoint(const Annotated& a) const {
    const double* c = constant_value(a.value);
    if (a.tag && !c) throw ParseError(a.span, "a constant annotated endpoint", to_string(a.value));
    return c;
  }

  Expr bracket_atom() {
    const Token open = next();
    if (open.kind == Tok::LBrace) return point_set();
    if (open.kind != Tok::LParen && open.kind != Tok::LBracket) fail_at(open, "'(' or '['");
    Annotated lo = endpoint();
    if (open.kind == Tok::LParen && !lo.tag && accept(Tok::RParen)) return lo.value;
    expect(Tok::Comma, "','");
    Annotated hi = endpoint();
    bool hi_open;
    if (accept(Tok::RParen)) {
      hi_open = true;
    } else if (accept(Tok::RBracket)) {
      hi_open = false;
    } else {
      fail("')' or ']'");
    }
    const bool lo_open = open.kind == Tok::LParen;
    const double* a = constant_endpoint(lo);
    const double* b = constant_endpoint(hi);
    if (a && b) {
      const RealSet base = RealSet::interval(*a, *b, lo_open, hi_open);
      RealSet s = base;
      if (lo.tag) s = s.with_membership(*a, *lo.tag);
      if (hi.tag) s = s.with_membership(*b, *hi.tag);
      return Expr::set(s);
    }
    return fold(Expr::band(lo.value, hi.value, lo_open, hi_open));
  }

  Expr point_set() {
    std::vector<double> pts;
    std::vector<std::pair<double, MembershipTriple>> tags;
    if (!accept(Tok::RBrace)) {
      do {
        Annotated a;
        a.span = peek().span;
        a.value = sum();
        a.tag = annotation();
        const double* c = constant_value(a.value);
        if (!c) throw ParseError(a.span, "a constant set element", to_string(a.value));
        pts.push_back(*c);
        if (a.tag) tags.emplace_back(*c, *a.tag);
      } while (accept(Tok::Comma));
      expect(Tok::RBrace, "'}'");
    }
    RealSet s = RealSet::normalize({}, pts);
    for (const auto& [x, m] : tags) s = s.with_membership(x, m);
    return Expr::set(s);
  }

  Expr union_chain(Expr first) {
    if (!is_ident("u")) return first;
    const auto* s0 = first.as<ast::Set>();
    RealSet acc = s0 ? s0->value : RealSet();
    if (const double* c = constant_value(first)) acc = RealSet::point(*c);
    else if (!s0) fail("a constant set before 'u'");
    while (is_ident("u")) {
      next();
      const Token& at = peek();
      Expr part = bracket_atom();
      if (const auto* s = part.as<ast::Set>()) {
        acc = unite(acc, s->value);
      } else if (const double* c = constant_value(part)) {
        acc = unite(acc, RealSet::point(*c));
      } else {
        fail_at(at, "a constant set after 'u'");
      }
    }
    return Expr::set(acc);
  }

  // Endpoint of a domain piece: a constant or +-inf.
  double domain_endpoint() {
    const Token& t = peek();
    int sign = 0;
    if ((t.kind == Tok::Minus || t.kind == Tok::Plus) && is_ident("inf", 1)) {
      sign = t.kind == Tok::Minus ? -1 : 1;
      next();
    }
    if (is_ident("inf")) {
      next();
      return sign < 0 ? -kInf : kInf;
    }
    Expr e = sum();
    const double* c = constant_value(e);
    if (!c) fail_at(t, "a constant endpoint");
    return *c;
  }

  // Unions of intervals and point sets; infinite ends only when allowed.
  std::pair<std::vector<Interval>, RealSet> set_chain(bool allow_inf) {
    std::vector<Interval> pieces;
    do {
      const Token& open = peek();
      if (open.kind == Tok::LBrace) {
        const Expr set = point_set_after_brace();
        for (const auto& p : set.as<ast::Set>()->value.pieces()) pieces.push_back(p);
        continue;
      }
      if (open.kind != Tok::LParen && open.kind != Tok::LBracket) fail("an interval or '{'");
      next();
      const double a = domain_endpoint();
      expect(Tok::Comma, "','");
      const double b = domain_endpoint();
      bool hi_open = true;
      if (accept(Tok::RBracket)) {
        hi_open = false;
      } else {
        expect(Tok::RParen, "')' or ']'");
      }
      if (!allow_inf && (std::isinf(a) || std::isinf(b))) {
        fail_at(open, "a bounded set (inf is only allowed in piece domains)");
      }
      pieces.push_back(Interval::make(a, b, open.kind == Tok::LParen || std::isinf(a),
                                      hi_open || std::isinf(b)));
    } while (is_ident("u") && (next(), true));
    RealSet finite;
    if (!allow_inf) finite = RealSet::normalize(pieces);
    return {pieces, finite};
  }

  Expr point_set_after_brace() {
    next();
    return point_set();
  }

  static Region complement(const RealSet& s) {
    std::vector<Interval> gaps;
    double lo = -kInf;
    bool lo_open = true;
    for (const auto& p : s.pieces()) {
      gaps.push_back(Interval{lo, p.lo, lo_open, !p.lo_open});
      lo = p.hi;
      lo_open = !p.hi_open;
    }
    gaps.push_back(Interval{lo, kInf, lo_open, true});
    std::erase_if(gaps, [](const Interval& g) { return g.is_empty(); });
    return Region::from(gaps);
  }

  // True when the brace block starting at the current token holds 'on'/'at'.
  bool brace_is_piecewise() const {
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind == Tok::LBrace) ++depth;
      if (t.kind == Tok::RBrace && --depth == 0) return false;
      if (depth == 1 && t.kind == Tok::Ident && (t.text == "on" || t.text == "at")) return true;
      if (t.kind == Tok::End) return false;
    }
    return false;
  }

  FuncSpec spec_body() {
    if (is_ident("table")) {
      next();
      return table();
    }
    if (peek().kind == Tok::LBrace && brace_is_piecewise()) return piecewise();
    return FuncSpec::from_expr(expression());
  }

  RealSet constant_set(const char* what) {
    const Token& start = peek();
    Expr e = sum();
    if (const auto* s = e.as<ast::Set>()) return s->value;
    if (const double* c = constant_value(e)) return RealSet::point(*c);
    fail_at(start, what);
  }

  FuncSpec table() {
    expect(Tok::LBrace, "'{'");
    std::vector<TableRow> rows;
    while (peek().kind != Tok::RBrace) {
      TableRow row;
      row.arg = constant_set("a constant argument set");
      expect(Tok::Arrow, "'->'");
      row.val = constant_set("a constant value set");
      if (accept(Tok::Question)) {
        row.tag = PairTag::potential();
      } else if (auto m = annotation()) {
        row.tag = PairTag::partial(*m);
      }
      rows.push_back(std::move(row));
      if (!accept(Tok::Semi)) break;
    }
    expect(Tok::RBrace, "'}'");
    return FuncSpec::table(std::move(rows));
  }

  FuncSpec piecewise() {
    expect(Tok::LBrace, "'{'");
    std::vector<Piece> pieces;
    std::vector<SetPiece> set_pieces;
    while (peek().kind != Tok::RBrace) {
      FuncSpec body = FuncSpec::from_expr(expression());
      if (is_ident("on")) {
        next();
        pieces.push_back({region(), body});
      } else if (is_ident("at")) {
        next();
        const Token& at = peek();
        const NeutroValue where = [&] {
          Expr e = expression();
          try {
            return eval_constant(e);
          } catch (const Error&) {
            fail_at(at, "a constant set argument");
          }
        }();
        for (const auto& b : where.branches()) {
          const auto* s = std::get_if<RealSet>(&b);
          if (!s) fail_at(at, "a set argument");
          set_pieces.push_back({*s, body});
        }
      } else {
        fail("'on' or 'at'");
      }
      if (!accept(Tok::Semi)) break;
    }
    expect(Tok::RBrace, "'}'");
    return FuncSpec::piecewise(std::move(pieces), std::move(set_pieces));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::pair<std::string, FuncSpec> parse_funcdef_at(std::string_view text, int first_line) {
  Parser p(text, first_line);
  return p.funcdef();
}

}  // namespace

Expr parse_expr(std::string_view text) {
  Parser p(text, 1);
  Expr e = p.expression();
  p.expect_end();
  return e;
}

std::pair<std::string, FuncSpec> parse_funcdef(std::string_view text) {
  return parse_funcdef_at(text, 1);
}

std::vector<std::pair<std::string, FuncSpec>> parse_defs(std::string_view text) {
  std::string clean(text);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (clean[i] != '#') continue;
    while (i < clean.size() && clean[i] != '\n') clean[i++] = ' ';
  }
  std::vector<std::pair<std::string, FuncSpec>> out;
  std::string chunk;
  int chunk_line = 1;
  int line = 1;
  int depth = 0;
  std::size_t start = 0;
  auto flush = [&]() {
    if (chunk.find_first_not_of(" \t\r\n") == std::string::npos) {
      chunk.clear();
      return;
    }
    auto def = parse_funcdef_at(chunk, chunk_line);
    for (const auto& [name, _] : out) {
      if (name == def.first) {
        throw ParseError({chunk_line, 1, 0}, "a unique function name", "'" + name + "' again");
      }
    }
    out.push_back(std::move(def));
    chunk.clear();
  };
  while (start <= clean.size()) {
    std::size_t end = clean.find('\n', start);
    if (end == std::string::npos) end = clean.size();
    const std::string_view row(clean.data() + start, end - start);
    if (chunk.empty() || chunk.find_first_not_of(" \t\r\n") == std::string::npos) {
      chunk.clear();
      chunk_line = line;
    }
    chunk += row;
    chunk += '\n';
    for (char c : row) {
      if (c == '{') ++depth;
      if (c == '}') --depth;
    }
    if (depth <= 0) {
      depth = 0;
      flush();
    }
    ++line;
    start = end + 1;
  }
  flush();
  return out;
}

NeutroValue parse_value(std::string_view text) {
  Expr e = parse_expr(text);
  if (depends_on_x(e) || has_param(e)) {
    throw ParseError({1, 1, static_cast<int>(text.size())}, "a constant value", "'" + std::string(text) + "'");
  }
  return eval_constant(e);
}

RealSet parse_realset(std::string_view text) {
  const NeutroValue v = parse_value(text);
  if (!v.is_determinate() || !std::holds_alternative<RealSet>(v.branches().front())) {
    throw ParseError({1, 1, static_cast<int>(text.size())}, "a single set", "'" + std::string(text) + "'");
  }
  return v.as_set();
}

Region parse_region(std::string_view text) {
  Parser p(text, 1);
  Region r = p.region();
  p.expect_end();
  return r;
}

std::string render(const NeutroValue& v) { return to_string(v); }

}  // namespace neutro
