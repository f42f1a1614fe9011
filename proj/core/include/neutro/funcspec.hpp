#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "neutro/expr.hpp"
#include "neutro/realset.hpp"

namespace neutro {

struct SpecNode;
struct Piece;
struct SetPiece;
struct TableRow;

/// Descriptor of a neutrosophic function.  Like Expr it is an immutable
/// handle onto a shared tree.
class FuncSpec {
 public:
  /// The crisp identity x.
  FuncSpec();

  static FuncSpec crisp(Expr body);
  /// Value [lower(x), upper(x)]; crossing envelopes are ordered pointwise.
  static FuncSpec thick(Expr lower, Expr upper, bool lo_open = false, bool hi_open = false);
  static FuncSpec nn(Expr body);
  /// Throws OverlapError when two pointwise domains intersect.
  static FuncSpec piecewise(std::vector<Piece> pieces,
                            std::vector<SetPiece> set_pieces = {});
  /// A single branch collapses to itself; none throws NotSupported.
  static FuncSpec alternatives(std::vector<FuncSpec> branches);
  static FuncSpec table(std::vector<TableRow> rows);
  /// outer(inner(x)) evaluated by fan-out over the inner value.
  static FuncSpec composed(FuncSpec outer, FuncSpec inner);
  /// Pointwise lhs (op) rhs.
  static FuncSpec combined(SetOp op, FuncSpec lhs, FuncSpec rhs);
  static FuncSpec scaled(double alpha, FuncSpec f);

  /// Top-level "or" becomes Alternatives, a band with non-constant ends
  /// becomes Thick, anything mentioning I becomes an NN expression, the rest
  /// is Crisp.
  static FuncSpec from_expr(const Expr& e);

  [[nodiscard]] const SpecNode& node() const noexcept { return *node_; }
  template <class T>
  [[nodiscard]] const T* as() const noexcept;

  friend bool operator==(const FuncSpec& a, const FuncSpec& b);

 private:
  explicit FuncSpec(std::shared_ptr<const SpecNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const SpecNode> node_;
};

/// A formula piece valid for every point of `domain`.
struct Piece {
  Region domain;
  FuncSpec body;
  friend bool operator==(const Piece&, const Piece&) = default;
};

/// The value at the set argument `argument` taken as a whole.  A point query
/// also matches when `argument` is a finite set of points containing it.
struct SetPiece {
  RealSet argument;
  FuncSpec body;
  friend bool operator==(const SetPiece&, const SetPiece&) = default;
};

struct TableRow {
  RealSet arg;
  RealSet val;
  PairTag tag{};
  friend bool operator==(const TableRow&, const TableRow&) = default;
};

namespace spec {
struct Crisp {
  Expr body;
  friend bool operator==(const Crisp&, const Crisp&) = default;
};
struct Thick {
  Expr lower;
  Expr upper;
  bool lo_open = false;
  bool hi_open = false;
  friend bool operator==(const Thick&, const Thick&) = default;
};
struct NNExpr {
  Expr body;
  friend bool operator==(const NNExpr&, const NNExpr&) = default;
};
struct Piecewise {
  std::vector<Piece> pieces;
  std::vector<SetPiece> set_pieces;
  friend bool operator==(const Piecewise&, const Piecewise&) = default;
};
struct Alternatives {
  std::vector<FuncSpec> branches;
  friend bool operator==(const Alternatives&, const Alternatives&) = default;
};
struct Table {
  std::vector<TableRow> rows;
  friend bool operator==(const Table&, const Table&) = default;
};
struct Composed {
  FuncSpec outer;
  FuncSpec inner;
  friend bool operator==(const Composed&, const Composed&) = default;
};
struct Combined {
  SetOp op;
  FuncSpec lhs;
  FuncSpec rhs;
  friend bool operator==(const Combined&, const Combined&) = default;
};
}  // namespace spec

struct SpecNode {
  std::variant<spec::Crisp, spec::Thick, spec::NNExpr, spec::Piecewise, spec::Alternatives,
               spec::Table, spec::Composed, spec::Combined>
      v;
};

template <class T>
const T* FuncSpec::as() const noexcept {
  return std::get_if<T>(&node_->v);
}

/// Definition-body text in the DSL.  Composed and combined specs, which have
/// no surface syntax, render as "compose(f, g)" and "(f) + (g)".
std::string to_string(const FuncSpec& f);

}  // namespace neutro
