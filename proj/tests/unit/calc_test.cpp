#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "neutro/calc.hpp"
#include "neutro/error.hpp"
#include "neutro/evaluate.hpp"
#include "neutro/textparse.hpp"

using namespace neutro;

namespace {

FuncSpec def(const std::string& text) { return parse_funcdef(text).second; }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::UsageError;
}

using DK = DerivClass::Kind;

}  // namespace

TEST(Differentiate, Rules) {
  const std::pair<const char*, const char*> cases[] = {
      {"x^3", "3*x^2"},
      {"5", "0"},
      {"exp(2x)", "exp(2*x)*2"},
      {"ln(x)", "1/x"},
      {"sin(x)", "cos(x)"},
  };
  for (const auto& [in, want] : cases) {
    const Expr d = differentiate(parse_expr(in));
    EXPECT_EQ(to_string(d), want) << in;
  }
}

TEST(Differentiate, AgreesWithDifferences) {
  for (const char* body : {"x*exp(x)", "sin(x)/x", "sqrt(x^2 + 1)", "ln(x)*cos(x)", "2^x",
                           "log_3(x)", "x^x", "1/(x^2 + 1)^3"}) {
    const Expr e = parse_expr(body);
    const Expr d = differentiate(e);
    for (double x : {0.7, 1.3, 2.9}) {
      const double num = neutro::testing::centered_difference([&](double t) { return eval_scalar(e, t); }, x);
      EXPECT_NEAR(eval_scalar(d, x), num, 1e-6 * std::max(1.0, std::abs(num))) << body << " at " << x;
    }
  }
}

TEST(Differentiate, AbsIsUnsupported) {
  EXPECT_EQ(code_of([] { (void)differentiate(parse_expr("abs(x)")); }), Errc::NotSupported);
}

TEST(DerivativeThick, Envelopes) {
  EXPECT_EQ(to_string(derivative_thick(def("q(x) = [2x^3 + 7x, x^5]"))), "[6*x^2 + 7, 5*x^4]");
}

TEST(DerivativeThick, ConstantBand) {
  EXPECT_EQ(eval_at(derivative_thick(def("f(x) = [2x + 2, 3 + 2x]")), 1.5),
            NeutroValue(RealSet::point(2)));
  EXPECT_EQ(eval_at(derivative_thick(FuncSpec::thick(Expr::constant(2), Expr::constant(3))), 4),
            NeutroValue(RealSet::point(0)));
}

TEST(DerivativeThick, EqualSlopes) {
  EXPECT_EQ(eval_at(derivative_thick(def("f(x) = [2x, 2x+1]")), 7), NeutroValue(RealSet::point(2)));
}

TEST(DerivativeThick, Alternatives) {
  const NeutroValue v = eval_at(derivative_thick(def("f(x) = x^2 or x^3")), 2);
  EXPECT_EQ(v, NeutroValue(std::vector<Branch>{RealSet::point(4), RealSet::point(12)}));
}

TEST(DerivativeClassify, MereoDerivative) {
  const FuncSpec f = def("f(x) = { [x, 3x] on (-inf, 0]; [2x, 5x] on (0, inf) }");
  const DerivClass d = derivative_classify(f, 0);
  EXPECT_EQ(d.kind, DK::MereoDerivative) << to_string(d);
  EXPECT_EQ(d.value, RealSet::closed(2, 3));
}

TEST(DerivativeClassify, Differentiable) {
  const FuncSpec f = def("f(x) = { [x, 3x] on (-inf, 0]; [x, 3x] on (0, inf) }");
  const DerivClass d = derivative_classify(f, 0);
  EXPECT_EQ(d.kind, DK::Differentiable) << to_string(d);
  EXPECT_EQ(d.value, RealSet::closed(1, 3));
}

TEST(DerivativeClassify, NotDifferentiable) {
  const FuncSpec f = def("f(x) = { [0, x] on (-inf, 1]; [2x, 3x] on (1, inf) }");
  const DerivClass d = derivative_classify(f, 1);
  EXPECT_EQ(d.kind, DK::NotDifferentiable) << to_string(d);
}

TEST(DerivativeClassify, SmoothThick) {
  const DerivClass d = derivative_classify(def("q(x) = [2x^3 + 7x, x^5]"), 1);
  EXPECT_EQ(d.kind, DK::Differentiable);
  EXPECT_LE(eta_metric(d.value, RealSet::closed(5, 13)), 1e-9);
}

TEST(DerivativeNN, WorkedExamples) {
  EXPECT_EQ(to_string(derivative_nn(def("n(x) = 3x - x^2*I"))), "3 - 2*x*I");
  EXPECT_EQ(to_string(nn_polynomial(derivative_nn(def("n(x) = -x + 2x*I1 + 5x^3*I2")))),
            "-1 + 2*I + 15*x^2*I2");
  EXPECT_TRUE(nn_polynomial(derivative_nn(def("c(x) = 7 + 3I"))).is_zero());
}

TEST(DerivativeNN, NonPolynomial) {
  EXPECT_EQ(code_of([] { (void)derivative_nn(def("f(x) = exp(x)*I")); }), Errc::NotSupported);
}

TEST(AntiderivativeNN, WorkedExamples) {
  EXPECT_EQ(to_string(antiderivative_nn(def("m(x) = 5x^2 + (3x+1)*I"))),
            "5*x^3/3 + (3*x^2/2 + x)*I + C");
  EXPECT_EQ(to_string(antiderivative_nn(def("m(x) = -5 + 2*I1 - x^4*I2 + 7x*I3"))),
            "-5*x + 2*x*I - x^5/5*I2 + 7*x^2/2*I3 + a + b*I");
  EXPECT_EQ(to_string(antiderivative_nn(def("z(x) = 0"))), "0 + C");
}

TEST(Integrate, ThickLinear) {
  const RealSet r = integrate_thick(def("f(x) = [x, x+1]"), 0, 1);
  EXPECT_NEAR(r.inf(), 0.5, 1e-9);
  EXPECT_NEAR(r.sup(), 1.5, 1e-9);
}

TEST(Integrate, CrossingEnvelopes) {
  const RealSet r = integrate_thick(def("f(x) = [x, 1]"), 0, 2);
  EXPECT_NEAR(r.inf(), 1.5, 1e-6);
  EXPECT_NEAR(r.sup(), 2.5, 1e-6);
}

TEST(Integrate, ThreePieceStructure) {
  const RealSet r = integrate_thick(def("p(x) = { [x, 2-x] on [0,2]; x^2 on (2,3] }"), 0, 3);
  EXPECT_NEAR(r.inf(), 0.5 + 0.5 + 19.0 / 3, 1e-6);
  EXPECT_NEAR(r.sup(), 1.5 + 1.5 + 19.0 / 3, 1e-6);
}

TEST(Integrate, LeftRuleConvergesSlower) {
  const FuncSpec f = def("f(x) = [x^2, x^2 + 1]");
  const double exact = 1.0 / 3;
  const RealSet mid = integrate_thick(f, 0, 1, {256, Rule::Midpoint});
  const RealSet left = integrate_thick(f, 0, 1, {256, Rule::LeftEndpoint});
  EXPECT_LT(std::abs(mid.inf() - exact), std::abs(left.inf() - exact));
  EXPECT_NEAR(left.inf(), exact, 1.0 / 256);
}

TEST(Integrate, ReportRichardson) {
  const IntegralReport r = integrate_thick_report(def("f(x) = [x^2, x^3]"), 0, 1, {64, Rule::LeftEndpoint});
  EXPECT_LT(std::abs(r.extrapolated.inf() - 0.25), std::abs(r.value.inf() - 0.25));
  EXPECT_LT(std::abs(r.extrapolated.sup() - 1.0 / 3), std::abs(r.value.sup() - 1.0 / 3));
  EXPECT_NEAR(r.extrapolated.inf(), 0.25, 5e-4);
  EXPECT_GT(r.error_estimate, 0);
  EXPECT_LT(eta_metric(r.value, RealSet::closed(0.25, 1.0 / 3)),
            eta_metric(r.coarse, RealSet::closed(0.25, 1.0 / 3)));
}

TEST(Integrate, Errors) {
  EXPECT_EQ(code_of([] { (void)integrate_thick(def("f(x) = x"), 1, 0); }), Errc::InvalidBounds);
  EXPECT_EQ(code_of([] { (void)integrate_thick(def("f(x) = ln(x)"), -1, 1); }),
            Errc::IntegrationError);
}

TEST(Interpretations, Triples) {
  const Interpretations a = integral_interpretations(0.5, 1.5);
  EXPECT_EQ(a.min, 0.5);
  EXPECT_EQ(a.mid, 1.0);
  EXPECT_EQ(a.max, 1.5);
  const Interpretations b = integral_interpretations(1.5, 2.5);
  EXPECT_EQ(b.mid, 2.0);
  const Interpretations c = integral_interpretations(2, 2);
  EXPECT_EQ(c.min, 2);
  EXPECT_EQ(c.max, 2);
}

TEST(SetBounds, PointsReduceToClassical) {
  const RealSet r = integrate_setbounds(def("f(x) = x"), RealSet::point(0), RealSet::point(1));
  EXPECT_NEAR(r.inf(), 0.5, 1e-6);
  EXPECT_NEAR(r.sup(), 0.5, 1e-6);
}

TEST(SetBounds, IntervalUpperBound) {
  const RealSet r =
      integrate_setbounds(def("f(x) = x"), RealSet::point(0), RealSet::closed(1, 2), {100000, Rule::Midpoint});
  EXPECT_NEAR(r.inf(), 1, 1e-4);
  EXPECT_NEAR(r.sup(), 2, 1e-4);
}

TEST(SetBounds, DegenerateThick) {
  const RealSet r = integrate_setbounds(def("f(x) = [x, x]"), RealSet::closed(0, 0), RealSet::closed(1, 1));
  EXPECT_NEAR(r.inf(), 0.5, 1e-6);
  EXPECT_NEAR(r.sup(), 0.5, 1e-6);
}

TEST(SetBounds, ChainPrecondition) {
  EXPECT_EQ(code_of([] {
              (void)integrate_setbounds(def("f(x) = x"), RealSet::closed(0, 3), RealSet::closed(1, 2));
            }),
            Errc::InvalidBounds);
}
