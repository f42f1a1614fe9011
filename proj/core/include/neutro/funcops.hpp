#pragma once

#include <optional>

#include "neutro/funcspec.hpp"
#include "neutro/value.hpp"

namespace neutro {

/// f o g.  Crisp inner formulas without alternatives are substituted
/// symbolically; alternatives distribute so that m and n branches give m*n;
/// everything else becomes a Composed spec evaluated by fan-out.
FuncSpec compose(const FuncSpec& f, const FuncSpec& g);

/// Inverse relation.  Tables are regrouped by value; formulas built from
/// affine steps, exp, ln, log, sqrt and general powers are solved for x;
/// thick specs invert envelope-wise; piecewise specs map excluded points and
/// set arguments through the forward function.  Anything else: NotSupported.
FuncSpec invert(const FuncSpec& f);

/// Inverse of a formula in which x occurs exactly once.
std::optional<Expr> invert_expr(const Expr& e);

enum class RelationClass { CrispFunction, SubsetFunction, GeneralRelation };
/// Vertical-line classification of a tabulated relation; NotSupported for
/// other specs.
RelationClass classify_relation(const FuncSpec& f);

enum class Parity { Even, Odd, Neither };
/// Sampling test of f(-x) = f(x) and f(-x) = -f(x) over `samples` grid points
/// of `domain` plus every set argument of the spec.  DomainError when the
/// domain is not symmetric about 0.
Parity parity(const FuncSpec& f, const RealSet& domain, int samples = 1024);

/// Points of `search` where some branch of f contains 0: grid scan followed by
/// bisection to 1e-9 on every membership boundary and sign change.
RealSet zeros(const FuncSpec& f, const RealSet& search, int grid = 1024);

const char* to_string(RelationClass c);
const char* to_string(Parity p);

}  // namespace neutro
