#pragma once

#include "neutro/expr.hpp"
#include "neutro/funcspec.hpp"
#include "neutro/value.hpp"

namespace neutro {

/// Interval-extension evaluation of `e` with x bound to `x`.  Alternatives
/// anywhere in the tree, or in nested values, fan out into result branches in
/// input order.
NeutroValue eval(const Expr& e, const Branch& x);
/// Evaluation of an expression without x.
NeutroValue eval_constant(const Expr& e);
/// Plain double evaluation; throws NotSupported when `e` contains sets,
/// indeterminacies, alternatives or bands.
double eval_scalar(const Expr& e, double x);
/// True when eval_scalar applies.
bool is_scalar(const Expr& e);

NeutroValue eval(const FuncSpec& f, const NeutroValue& at);
NeutroValue eval(const FuncSpec& f, const Branch& at);
NeutroValue eval_at(const FuncSpec& f, double x);

/// num(at) / den(at) reduced with I^2 = I.  The denominator must evaluate to a
/// crisp nonzero number, otherwise IndeterminateDenominator.
NeutroNumber nn_eval_rational(const Expr& num, const Expr& den, const NeutroNumber& at);

}  // namespace neutro
