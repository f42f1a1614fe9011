#include <gtest/gtest.h>

#include "neutro/error.hpp"
#include "neutro/evaluate.hpp"
#include "neutro/neutronum.hpp"
#include "neutro/textparse.hpp"

using namespace neutro;

namespace {

NeutroNumber nn(double a, double b) { return NeutroNumber(a, {{1, b}}); }
const NeutroNumber I = NeutroNumber::indeterminacy();

}  // namespace

TEST(NeutroNumber, SquareUsesIdempotence) { EXPECT_EQ(nn(2, 3) * nn(2, 3), nn(4, 21)); }

TEST(NeutroNumber, Product) { EXPECT_EQ(nn(1, 1) * nn(2, 3), nn(2, 8)); }

TEST(NeutroNumber, DivideByCrisp) { EXPECT_EQ(nn(6, 29).divided_by(8), nn(0.75, 3.625)); }

TEST(NeutroNumber, DivideByZeroThrows) {
  try {
    (void)nn(1, 1).divided_by(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DivisionByZero);
  }
}

TEST(NeutroNumber, IndeterminacySquared) { EXPECT_EQ(I * I, I); }

TEST(NeutroNumber, ZeroTimesIIsZero) {
  EXPECT_EQ(NeutroNumber(0) * I, NeutroNumber());
  EXPECT_TRUE((NeutroNumber(0) * I).is_crisp());
}

TEST(NeutroNumber, ZeroCoefficientsAreDropped) {
  EXPECT_TRUE((nn(1, 2) - nn(0, 2)).is_crisp());
  EXPECT_TRUE(NeutroNumber(3, {{2, 0.0}}).is_crisp());
}

TEST(NeutroNumber, DistinctSubindeterminaciesDoNotMultiply) {
  const NeutroNumber a = NeutroNumber::indeterminacy(1);
  const NeutroNumber b = NeutroNumber::indeterminacy(2);
  try {
    (void)(a * b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UndefinedSubindeterminacyProduct);
  }
  EXPECT_EQ((a + b).coefficient(2), 1.0);
  EXPECT_EQ(NeutroNumber::indeterminacy(2, 3) * NeutroNumber(2), NeutroNumber::indeterminacy(2, 6));
}

TEST(NeutroNumber, InverseSolvesTheProduct) {
  const NeutroNumber x = nn(2, 3);
  const NeutroNumber inv = x.inverse();
  const NeutroNumber one = x * inv;
  EXPECT_NEAR(one.determinate(), 1.0, 1e-15);
  EXPECT_NEAR(one.coefficient(1), 0.0, 1e-15);
  EXPECT_EQ(inv, NeutroNumber(0.5, {{1, -3.0 / (2 * 5)}}));
}

TEST(NeutroNumber, InverseRequiresNonzeroParts) {
  for (const NeutroNumber& x : {nn(0, 1), nn(2, -2)}) {
    try {
      (void)x.inverse();
      FAIL() << to_string(x);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::NotInvertible);
    }
  }
}

TEST(NeutroNumber, Pow) {
  EXPECT_EQ(nn(1, 1).pow(2), nn(1, 3));
  EXPECT_EQ(I.pow(7), I);
  EXPECT_EQ(nn(2, 3).pow(0), NeutroNumber(1));
}

TEST(NeutroNumber, Rendering) {
  EXPECT_EQ(to_string(nn(0.75, 3.625)), "0.75 + 3.625*I");
  EXPECT_EQ(to_string(nn(3, -2)), "3 - 2*I");
  EXPECT_EQ(to_string(NeutroNumber(-1, {{1, 2}, {2, 15}})), "-1 + 2*I + 15*I2");
  EXPECT_EQ(to_string(NeutroNumber(4)), "4");
}

TEST(RationalEvaluation, WorkedSubstitution) {
  const NeutroNumber v =
      nn_eval_rational(parse_expr("x^2 + (1+I)x"), parse_expr("2x + 4 - 6I"), nn(2, 3));
  EXPECT_EQ(v, nn(0.75, 3.625));
}

TEST(RationalEvaluation, Identity) {
  EXPECT_EQ(nn_eval_rational(parse_expr("x"), parse_expr("1"), NeutroNumber(5)), NeutroNumber(5));
}

TEST(RationalEvaluation, SquareOfOnePlusI) {
  EXPECT_EQ(nn_eval_rational(parse_expr("x^2"), parse_expr("1"), nn(1, 1)), nn(1, 3));
}

TEST(RationalEvaluation, IndeterminateDenominator) {
  for (const char* den : {"x", "x - 2 - 3I"}) {
    try {
      (void)nn_eval_rational(parse_expr("1"), parse_expr(den), nn(2, 3));
      FAIL() << den;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::IndeterminateDenominator) << den;
    }
  }
}
