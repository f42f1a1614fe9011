#pragma once

#include <string>

#include "neutro/expr.hpp"
#include "neutro/funcspec.hpp"
#include "neutro/polynomial.hpp"
#include "neutro/realset.hpp"

namespace neutro {

/// Symbolic d/dx, simplified.  Sets and indeterminacies are constants; bands
/// differentiate endpoint-wise.  NotSupported for abs.
Expr differentiate(const Expr& e);

/// Envelope-wise derivative of a Crisp, Thick or Alternatives spec.
FuncSpec derivative_thick(const FuncSpec& f);

struct DerivClass {
  enum class Kind { Differentiable, MereoDerivative, NotDifferentiable };
  Kind kind = Kind::NotDifferentiable;
  RealSet value;
  RealSet left;
  RealSet right;
};

/// Compares the derivative sets of the pieces left and right of c.  Works on
/// any spec derivative_thick accepts, and on piecewise specs of such pieces.
DerivClass derivative_classify(const FuncSpec& f, double c, double tol = 1e-6);

/// The polynomial of an NN or crisp spec; NotSupported otherwise.
Polynomial nn_polynomial(const FuncSpec& f);
FuncSpec derivative_nn(const FuncSpec& f);

struct Antiderivative {
  Polynomial primitive;
  /// "C" for plain indeterminacy, "a + b*I" once refined indices appear.
  std::string constant;
};
Antiderivative antiderivative_nn(const FuncSpec& f);
/// "5*x^3/3 + (3*x^2/2 + x)*I + C".
std::string to_string(const Antiderivative& a);

enum class Rule { LeftEndpoint, Midpoint };

struct IntegralConfig {
  int n = 4096;
  Rule rule = Rule::Midpoint;
};

struct IntegralReport {
  RealSet value;
  /// Same sum at n/2 cells.
  RealSet coarse;
  /// Richardson-extrapolated endpoints.
  RealSet extrapolated;
  /// Largest endpoint difference between value and extrapolated.
  double error_estimate = 0.0;
};

/// Riemann sum of the value sets over [a,b]; piece boundaries of a piecewise
/// spec are sample-cell boundaries.
RealSet integrate_thick(const FuncSpec& f, double a, double b, const IntegralConfig& cfg = {});
IntegralReport integrate_thick_report(const FuncSpec& f, double a, double b,
                                      const IntegralConfig& cfg = {});

struct Interpretations {
  double min;
  double mid;
  double max;
};
Interpretations integral_interpretations(double lower, double upper);

/// Integral between set-valued bounds: the sample sets C_i interpolate the
/// hulls of A and B and the cell width is eta(B,A)/n.
RealSet integrate_setbounds(const FuncSpec& f, const RealSet& A, const RealSet& B,
                            const IntegralConfig& cfg = {});

std::string to_string(const DerivClass& d);

}  // namespace neutro
