#include <gtest/gtest.h>

#include "confsym/rational.hpp"

using namespace confsym;

namespace {

RatFunc P(const char* n) { return RatFunc::parameter(n); }

}  // namespace

TEST(Poly, GcdOfProducts) {
  Poly x = Poly::variable("x"), y = Poly::variable("y");
  Poly a = (x + y) * (x - y) * (x + Poly(Rational(2)));
  Poly b = (x + y) * (x * y + Poly(Rational(1)));
  EXPECT_EQ(Poly::gcd(a, b), x + y);
}

TEST(Poly, GcdCoprime) {
  Poly x = Poly::variable("x"), y = Poly::variable("y");
  EXPECT_EQ(Poly::gcd(x + y, x - y), Poly(Rational(1)));
}

TEST(Poly, ExactDivision) {
  Poly x = Poly::variable("x"), y = Poly::variable("y");
  Poly a = (x + y).pow(3);
  auto q = Poly::divide_exact(a, x + y);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, (x + y).pow(2));
  EXPECT_FALSE(Poly::divide_exact(x * x + y, x + y).has_value());
}

TEST(RatFunc, CancelsExactly) {
  RatFunc x = P("x");
  RatFunc e = x + 2 - x * ((x + 2) / x);
  EXPECT_TRUE(e.is_zero());
}

TEST(RatFunc, CanonicalDenominator) {
  RatFunc x = P("x"), y = P("y");
  RatFunc a = (x + 2) / (2 * (y - x));
  RatFunc b = -(x + 2) / (2 * x - 2 * y);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.denominator().leading().second, 1);
}

TEST(RatFunc, SubstituteHalf) {
  RatFunc x = P("x");
  RatFunc e = (x + 2) / x;
  EXPECT_EQ(e.substitute({{"x", RatFunc(Rational(1, 2))}}), RatFunc(5));
}

TEST(RatFunc, RenderIsParseable) {
  RatFunc k = P("k");
  RatFunc e = -4 * k / (2 * k + 1);
  EXPECT_EQ(e.render(), "(-4*k)/(2*k + 1)");
}
