#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nulllag/polynomial.hpp"
#include "nulllag/quadrature.hpp"

using namespace nulllag;

namespace {

RealPolynomial poly(std::initializer_list<std::pair<double, Exponents>> terms) {
  RealPolynomial p(3);
  for (const auto& [c, e] : terms) p.add_term(e, c);
  return p;
}

}  // namespace

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational(" -6/8 "), Rational(-3, 4));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  EXPECT_EQ(parse_rational("0010"), Rational(10));
  EXPECT_EQ(parse_rational("007/08"), Rational(7, 8));
  EXPECT_EQ(parse_rational("-0.0"), Rational(0));
  EXPECT_EQ(format_rational(Rational(-3, 4)), "-3/4");
  EXPECT_EQ(format_rational(Rational(5)), "5");
  for (const char* bad : {"1/0", "abc", "", "1/2/3", "1.2.3", ".", "1e", "0x10", "1e999"}) {
    EXPECT_THROW((void)parse_rational(bad), ValidationError) << bad;
  }
}

TEST(Polynomial, DerivativeIsExact) {
  // p = 3 x^2 y - 2 y z^3 + 5
  const auto p = poly({{3.0, {2, 1, 0}}, {-2.0, {0, 1, 3}}, {5.0, {0, 0, 0}}});
  EXPECT_EQ(p.total_degree(), 4);
  EXPECT_EQ(p.derivative(0), poly({{6.0, {1, 1, 0}}}));
  EXPECT_EQ(p.derivative(1), poly({{3.0, {2, 0, 0}}, {-2.0, {0, 0, 3}}}));
  EXPECT_EQ(p.derivative(2), poly({{-6.0, {0, 1, 2}}}));
  EXPECT_EQ(p.derivative(2).total_degree(), 3);
  EXPECT_TRUE(p.derivative(0).derivative(0).derivative(0).is_zero());
}

TEST(Polynomial, RationalArithmeticIsExact) {
  RationalPolynomial p(2);
  p.add_term({1, 0}, Rational(1, 3));
  p.add_term({0, 1}, Rational(2, 7));
  const auto sq = p * p;
  EXPECT_EQ(sq.terms().at(Exponents{1, 1}), Rational(4, 21));
  EXPECT_TRUE((sq - p * p).is_zero());
  EXPECT_EQ(sq.derivative(0).terms().at(Exponents{1, 0}), Rational(2, 9));
}

TEST(Polynomial, EvaluationMatchesHand) {
  const auto p = poly({{3.0, {2, 1, 0}}, {-2.0, {0, 1, 3}}, {5.0, {0, 0, 0}}});
  const std::array<double, 3> x{0.5, 2.0, -1.0};
  EXPECT_DOUBLE_EQ(p.evaluate(x), 3.0 * 0.25 * 2.0 - 2.0 * 2.0 * -1.0 + 5.0);
  EXPECT_THROW((void)p.evaluate(std::array<double, 2>{1.0, 2.0}), ValidationError);
}

TEST(PolyField, JetHoldsExactDerivatives) {
  // y = (x1^2 x2, x3^3)
  const PolyField f({poly({{1.0, {2, 1, 0}}}), poly({{1.0, {0, 0, 3}}})});
  const std::array<double, 3> x{2.0, 3.0, 0.5};
  const auto j = f.jet(x);
  EXPECT_EQ(j.y[0], 12.0);
  EXPECT_EQ(j.dy[0 * 3 + 0], 12.0);
  EXPECT_EQ(j.dy[0 * 3 + 1], 4.0);
  EXPECT_EQ(j.dy[1 * 3 + 2], 0.75);
  EXPECT_EQ(j.d2y[(0 * 3 + 0) * 3 + 1], 4.0);
  EXPECT_EQ(j.d2y[(0 * 3 + 1) * 3 + 0], 4.0);
  EXPECT_EQ(j.d2y[(1 * 3 + 2) * 3 + 2], 3.0);
  EXPECT_EQ(f.max_variable_degree(), 3);
}

TEST(PolyField, GradientFieldsAreCurlFree) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto pot = PolyField::random(1, 4, [&] { return u(rng); })[0];
  const auto g = PolyField::gradient_of(pot);
  const std::array<double, 3> x{0.3, 0.7, 0.1};
  const auto j = g.jet(x);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_NEAR(j.dy[a * 3 + b], j.dy[b * 3 + a], 1e-14);
}

TEST(Monomials, CountIsBinomial) {
  EXPECT_EQ(monomials_up_to(3, 3).size(), 20u);
  EXPECT_EQ(monomials_up_to(9, 2).size(), 55u);
  EXPECT_EQ(monomials_up_to(3, 0).size(), 1u);
}

TEST(CubeBubble, VanishesOnBoundary) {
  const auto b = cube_bubble();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::array<double, 3> x{u(rng), u(rng), u(rng)};
    x[static_cast<std::size_t>(t % 3)] = (t % 2 == 0) ? 0.0 : 1.0;
    EXPECT_NEAR(b.evaluate(x), 0.0, 1e-16);
  }
  EXPECT_DOUBLE_EQ(b.evaluate(std::array<double, 3>{0.5, 0.5, 0.5}), 1.0 / 64.0);
}

TEST(Quadrature, GaussLegendreExactness) {
  for (int n = 1; n <= 12; ++n) {
    const auto r = gauss_legendre(n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (std::size_t q = 0; q < r.nodes.size(); ++q) s += r.weights[q] * std::pow(r.nodes[q], d);
      EXPECT_NEAR(s, 1.0 / (d + 1), 1e-14 / (d + 1)) << "n=" << n << " d=" << d;
    }
  }
  EXPECT_THROW((void)gauss_legendre(0), ValidationError);
  EXPECT_EQ(required_order(0), 1);
  EXPECT_EQ(required_order(1), 1);
  EXPECT_EQ(required_order(2), 2);
  EXPECT_EQ(required_order(7), 4);
}

TEST(Quadrature, CubeRuleIntegratesMonomials) {
  const int n = 4;
  const auto rule = cube_rule(n);
  for (const auto& e : monomials_up_to(3, 2 * n - 1)) {
    double s = 0.0;
    for (const auto& p : rule) s += p.w * std::pow(p.x[0], e[0]) * std::pow(p.x[1], e[1]) * std::pow(p.x[2], e[2]);
    const double exact = 1.0 / ((e[0] + 1) * (e[1] + 1) * (e[2] + 1));
    EXPECT_LE(std::abs(s - exact), 1e-14 * exact);
  }
}

TEST(Quadrature, SurfaceRuleDivergenceOfLinearField) {
  // v = (x1, 2 x2, -x3): flux equals integral of div v = 2.
  double flux = 0.0;
  for (const auto& p : cube_surface_rule(2)) {
    flux += p.w * (p.x[0] * p.normal[0] + 2.0 * p.x[1] * p.normal[1] - p.x[2] * p.normal[2]);
  }
  EXPECT_NEAR(flux, 2.0, 1e-14);
}
