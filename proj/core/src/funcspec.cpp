#include "neutro/funcspec.hpp"

#include "neutro/error.hpp"

namespace neutro {

namespace {

std::shared_ptr<const SpecNode> make_node(auto v) {
  return std::make_shared<const SpecNode>(SpecNode{std::move(v)});
}

std::string tag_text(const PairTag& t) {
  switch (t.kind) {
    case PairTag::Kind::Sure: return "";
    case PairTag::Kind::Potential: return " ?";
    case PairTag::Kind::Partial: return " " + to_string(t.degree);
  }
  return "";
}

const char* op_text(SetOp op) {
  switch (op) {
    case SetOp::Add: return " + ";
    case SetOp::Sub: return " - ";
    case SetOp::Mul: return "*";
    case SetOp::Div: return "/";
  }
  return "?";
}

}  // namespace

FuncSpec::FuncSpec() : node_(make_node(spec::Crisp{Expr::var()})) {}

FuncSpec FuncSpec::crisp(Expr body) { return FuncSpec(make_node(spec::Crisp{std::move(body)})); }

FuncSpec FuncSpec::thick(Expr lower, Expr upper, bool lo_open, bool hi_open) {
  return FuncSpec(make_node(spec::Thick{std::move(lower), std::move(upper), lo_open, hi_open}));
}

FuncSpec FuncSpec::nn(Expr body) { return FuncSpec(make_node(spec::NNExpr{std::move(body)})); }

FuncSpec FuncSpec::piecewise(std::vector<Piece> pieces, std::vector<SetPiece> set_pieces) {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (pieces[i].domain.overlaps(pieces[j].domain)) {
        throw Error(Errc::OverlapError, "piece domains " + to_string(pieces[i].domain) + " and " +
                                            to_string(pieces[j].domain) + " overlap");
      }
    }
  }
  for (std::size_t i = 0; i < set_pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < set_pieces.size(); ++j) {
      if (set_pieces[i].argument == set_pieces[j].argument) {
        throw Error(Errc::OverlapError,
                    "set argument " + to_string(set_pieces[i].argument) + " defined twice");
      }
    }
  }
  if (pieces.empty() && set_pieces.empty()) {
    throw Error(Errc::NotSupported, "piecewise definition without pieces");
  }
  return FuncSpec(make_node(spec::Piecewise{std::move(pieces), std::move(set_pieces)}));
}

FuncSpec FuncSpec::alternatives(std::vector<FuncSpec> branches) {
  if (branches.empty()) throw Error(Errc::NotSupported, "alternatives without branches");
  if (branches.size() == 1) return branches.front();
  return FuncSpec(make_node(spec::Alternatives{std::move(branches)}));
}

FuncSpec FuncSpec::table(std::vector<TableRow> rows) {
  return FuncSpec(make_node(spec::Table{std::move(rows)}));
}

FuncSpec FuncSpec::composed(FuncSpec outer, FuncSpec inner) {
  return FuncSpec(make_node(spec::Composed{std::move(outer), std::move(inner)}));
}

FuncSpec FuncSpec::combined(SetOp op, FuncSpec lhs, FuncSpec rhs) {
  return FuncSpec(make_node(spec::Combined{op, std::move(lhs), std::move(rhs)}));
}

FuncSpec FuncSpec::scaled(double alpha, FuncSpec f) {
  return combined(SetOp::Mul, crisp(Expr::constant(alpha)), std::move(f));
}

FuncSpec FuncSpec::from_expr(const Expr& e) {
  if (const auto* o = e.as<ast::Or>()) {
    std::vector<FuncSpec> branches;
    for (const auto& opt : o->options) branches.push_back(from_expr(opt));
    return alternatives(std::move(branches));
  }
  if (const auto* b = e.as<ast::Band>(); b && (depends_on_x(b->lo) || depends_on_x(b->hi))) {
    return thick(b->lo, b->hi, b->lo_open, b->hi_open);
  }
  if (has_indeterminacy(e)) return nn(e);
  return crisp(e);
}

bool operator==(const FuncSpec& a, const FuncSpec& b) {
  return a.node_ == b.node_ || a.node_->v == b.node_->v;
}

std::string to_string(const FuncSpec& f) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, spec::Crisp> || std::is_same_v<T, spec::NNExpr>) {
          return to_string(n.body);
        } else if constexpr (std::is_same_v<T, spec::Thick>) {
          return to_string(Expr::band(n.lower, n.upper, n.lo_open, n.hi_open));
        } else if constexpr (std::is_same_v<T, spec::Piecewise>) {
          std::string out = "{ ";
          bool first = true;
          for (const auto& p : n.pieces) {
            if (!first) out += "; ";
            first = false;
            out += to_string(p.body) + " on " + to_string(p.domain);
          }
          for (const auto& p : n.set_pieces) {
            if (!first) out += "; ";
            first = false;
            out += to_string(p.body) + " at " + to_string(p.argument);
          }
          return out + " }";
        } else if constexpr (std::is_same_v<T, spec::Alternatives>) {
          std::string out;
          for (const auto& b : n.branches) {
            if (!out.empty()) out += " or ";
            const bool paren = b.template as<spec::Alternatives>() != nullptr;
            out += paren ? "(" + to_string(b) + ")" : to_string(b);
          }
          return out;
        } else if constexpr (std::is_same_v<T, spec::Table>) {
          std::string out = "table { ";
          bool first = true;
          for (const auto& r : n.rows) {
            if (!first) out += "; ";
            first = false;
            out += to_string(r.arg) + "->" + to_string(r.val) + tag_text(r.tag);
          }
          return out + " }";
        } else if constexpr (std::is_same_v<T, spec::Composed>) {
          return "compose(" + to_string(n.outer) + ", " + to_string(n.inner) + ")";
        } else {
          return "(" + to_string(n.lhs) + ")" + op_text(n.op) + "(" + to_string(n.rhs) + ")";
        }
      },
      f.node().v);
}

}  // namespace neutro
