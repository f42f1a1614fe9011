#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neutro/error.hpp"
#include "neutro/expr.hpp"
#include "neutro/funcspec.hpp"
#include "neutro/value.hpp"

namespace neutro {

struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::string expected, std::string found);

  [[nodiscard]] const SourceSpan& span() const noexcept { return span_; }
  [[nodiscard]] const std::string& expected() const noexcept { return expected_; }
  [[nodiscard]] const std::string& found() const noexcept { return found_; }

 private:
  SourceSpan span_;
  std::string expected_;
  std::string found_;
};

/// Grammar, loosest first: "or", "+ -", "* /" (and juxtaposition such as
/// "2x"), unary minus, right-associative "^", atoms.  Atoms are numbers, x,
/// alpha, I / I2 ..., intervals "[a,b]" "(a,b)" "[a,b)" "(a,b]" whose ends
/// may be expressions, point sets "{1,2}", unions "[0,1] u {3}",
/// exp ln sqrt sin cos abs, and logarithms log_2(x), log_[2,3](x).
/// Constant subexpressions are folded.
Expr parse_expr(std::string_view text);

/// "name(x) = body".  The body is an expression, a thick value "[lo, hi]",
/// a piecewise block "{ expr on region; expr at set }" or a table
/// "table { {1}->{5}; {2,3}->[6,7] ?; {4}->{8} <0.5,0.2,0.1> }".
std::pair<std::string, FuncSpec> parse_funcdef(std::string_view text);

/// One definition per line (a piecewise block may span lines); '#' starts a
/// comment.  Definitions keep file order.
std::vector<std::pair<std::string, FuncSpec>> parse_defs(std::string_view text);

/// A constant expression evaluated to a value: "2 or 4", "[8,9]",
/// "0.75 + 3.625*I".
NeutroValue parse_value(std::string_view text);
/// A constant expression that evaluates to a single set.
RealSet parse_realset(std::string_view text);
/// Piece domains: unions of intervals with optional -inf / inf ends, "R", and
/// "R \ set".
Region parse_region(std::string_view text);

/// Canonical text; parse_value(render(v)) == v.
std::string render(const NeutroValue& v);

}  // namespace neutro
