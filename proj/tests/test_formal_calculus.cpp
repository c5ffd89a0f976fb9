#include "modzhu/formal_calculus.hpp"

#include <gtest/gtest.h>

using namespace modzhu;

namespace {

/// Oracle: reduced binomial from the exact falling factorial.
Elem oracle_binom(const FiniteField& f, const Exponent& a, unsigned k) {
  DScalar num = 1, den = 1;
  DScalar x = to_dscalar(a);
  for (unsigned j = 0; j < k; ++j) {
    num *= x - j;
    den *= j + 1;
  }
  return f.reduce(DScalar(num / den));
}

}  // namespace

TEST(Hasse, HalfPowerSecondDerivative) {
  const FiniteField& f = FiniteField::get(7);
  Distribution d = hasse(2, Distribution::monomial(f, Exponent(1, 2)));
  EXPECT_EQ(d.coefficient(Exponent(-3, 2)), f.reduce(DScalar(-1, 8)));
  EXPECT_EQ(d.coefficient(Exponent(-3, 2)), 6u);
}

TEST(Hasse, ZeroOrderIsIdentityAndCompositionLaw) {
  for (unsigned p : {5u, 7u}) {
    const FiniteField& f = FiniteField::get(p);
    for (int num = -20; num <= 20; ++num)
      for (int den : {1, 2, 3}) {
        Distribution z = Distribution::monomial(f, Exponent(num, den));
        EXPECT_EQ(hasse(0, z), z);
        for (unsigned m = 0; m <= 6; ++m)
          for (unsigned n = 0; n <= 6; ++n) {
            Distribution lhs = hasse(m, hasse(n, z));
            Distribution rhs = hasse(m + n, z).scaled(oracle_binom(f, Exponent(m + n), n));
            EXPECT_EQ(lhs.terms(), rhs.terms());
          }
      }
  }
}

TEST(Hasse, OutsideWindowIsUnknown) {
  const FiniteField& f = FiniteField::get(5);
  Distribution z = Distribution::monomial(f, Exponent(3));
  Window w;
  w.lo = Exponent(0);
  w.hi = Exponent(5);
  z.set_window(w);
  Distribution d = hasse(1, z);
  EXPECT_EQ(d.coefficient(Exponent(2)), 3u);
  EXPECT_THROW(d.coefficient(Exponent(5)), TruncationError);
}

TEST(BinomialExpand, Examples) {
  const FiniteField& f = FiniteField::get(7);
  auto one = binomial_expand(f, Exponent(1), Direction::ExpandInSecond, 4);
  EXPECT_EQ(one.terms().size(), 2u);
  EXPECT_EQ(one.coefficient(Exponent(1), Exponent(0)), 1u);
  EXPECT_EQ(one.coefficient(Exponent(0), Exponent(1)), 1u);
  auto inv = binomial_expand(f, Exponent(-1), Direction::ExpandInSecond, 2);
  EXPECT_EQ(inv.coefficient(Exponent(-1), Exponent(0)), 1u);
  EXPECT_EQ(inv.coefficient(Exponent(-2), Exponent(1)), f.neg(1));
  EXPECT_EQ(inv.coefficient(Exponent(-3), Exponent(2)), 1u);
  EXPECT_THROW(inv.coefficient(Exponent(-4), Exponent(3)), TruncationError);
  auto half = binomial_expand(f, Exponent(1, 2), Direction::ExpandInSecond, 2);
  EXPECT_EQ(half.coefficient(Exponent(-1, 2), Exponent(1)), f.reduce(DScalar(1, 2)));
  EXPECT_EQ(half.coefficient(Exponent(-3, 2), Exponent(2)), f.reduce(DScalar(-1, 8)));
}

TEST(BinomialExpand, OppositeDirectionsDoNotMix) {
  const FiniteField& f = FiniteField::get(5);
  auto a = binomial_expand(f, Exponent(-1), Direction::ExpandInSecond, 3);
  auto b = binomial_expand(f, Exponent(-1), Direction::ExpandInFirst, 3);
  EXPECT_THROW(a + b, DirectionError);
}

TEST(Translate, Examples) {
  const FiniteField& f5 = FiniteField::get(5);
  auto sq = translate(Distribution::monomial(f5, Exponent(2)), 2);
  EXPECT_EQ(sq.coefficient(Exponent(2), Exponent(0)), 1u);
  EXPECT_EQ(sq.coefficient(Exponent(1), Exponent(1)), 2u);
  EXPECT_EQ(sq.coefficient(Exponent(0), Exponent(2)), 1u);
  auto inv = translate(Distribution::monomial(f5, Exponent(-1)), 2);
  EXPECT_EQ(inv.coefficient(Exponent(-2), Exponent(1)), f5.neg(1));
  EXPECT_EQ(inv.coefficient(Exponent(-3), Exponent(2)), 1u);
  auto half = translate(Distribution::monomial(f5, Exponent(1, 2)), 1);
  EXPECT_EQ(half.coefficient(Exponent(-1, 2), Exponent(1)), f5.reduce(DScalar(1, 2)));
}

TEST(Translate, AgreesWithBinomialExpansion) {
  for (unsigned p : {5u, 7u}) {
    const FiniteField& f = FiniteField::get(p);
    for (int num = -20; num <= 20; ++num)
      for (int den : {1, 2, 3}) {
        Exponent a(num, den);
        auto t = translate(Distribution::monomial(f, a), 6);
        auto b = binomial_expand(f, a, Direction::ExpandInSecond, 6);
        for (unsigned n = 0; n <= 6; ++n) {
          EXPECT_EQ(t.coefficient(a - Exponent(n), Exponent(n)), oracle_binom(f, a, n));
          EXPECT_EQ(t.coefficient(a - Exponent(n), Exponent(n)),
                    b.coefficient(a - Exponent(n), Exponent(n)));
        }
      }
  }
}

TEST(Delta, ZerothDerivativeIsDelta) {
  const FiniteField& f = FiniteField::get(5);
  auto d = delta_derivative(f, 0, 6);
  for (int a = -6; a <= 6; ++a)
    for (int b = -6; b <= 6; ++b)
      EXPECT_EQ(d.coefficient(Exponent(a), Exponent(b)), (a + b == -1) ? 1u : 0u);
}

TEST(Delta, Annihilation) {
  for (unsigned p : {5u, 7u}) {
    const FiniteField& f = FiniteField::get(p);
    EXPECT_TRUE(delta_derivative_annihilation(f, 1, 0, 10));
    EXPECT_TRUE(delta_derivative_annihilation(f, 3, 1, 10));
    for (unsigned m = 1; m <= 6; ++m)
      for (unsigned n = 0; n < m; ++n) EXPECT_TRUE(delta_derivative_annihilation(f, m, n, 10));
    EXPECT_THROW(delta_derivative_annihilation(f, 2, 2, 10), ParameterError);
    // The product is nonzero when m <= n.
    for (unsigned n = 0; n <= 4; ++n)
      for (unsigned m = 0; m <= n; ++m)
        EXPECT_FALSE(delta_derivative_product(f, m, n, 10).is_zero_on_window());
  }
}

TEST(Delta, DerivativesAreIndependent) {
  for (unsigned p : {5u, 7u}) {
    const FiniteField& f = FiniteField::get(p);
    for (unsigned n = 0; n <= 6; ++n)
      for (int den : {1, 2, 3})
        EXPECT_EQ(delta_derivative_rank(f, n, Exponent(1, den), 30), n + 1);
  }
}

TEST(Residue, Examples) {
  const FiniteField& f = FiniteField::get(7);
  EXPECT_EQ(residue(Distribution::monomial(f, Exponent(-1))), 1u);
  Distribution g(f);
  g.add_term(Exponent(2), 1);
  g.add_term(Exponent(-1), 3);
  g.add_term(Exponent(-2), 1);
  EXPECT_EQ(residue(g), 3u);
  for (int num = -12; num <= 12; ++num)
    for (int den : {1, 2})
      EXPECT_EQ(residue(hasse(1, Distribution::monomial(f, Exponent(num, den)))), 0u);
  Distribution w = Distribution::monomial(f, Exponent(3));
  Window win;
  win.lo = Exponent(0);
  w.set_window(win);
  EXPECT_THROW(residue(w), TruncationError);
}

TEST(Residue, BivariateInFirstVariable) {
  const FiniteField& f = FiniteField::get(7);
  auto d = delta_derivative(f, 0, 5);
  Distribution r = residue(d, Variable::First);
  EXPECT_EQ(r.coefficient(Exponent(0)), 1u);
  EXPECT_EQ(r.coefficient(Exponent(1)), 0u);
}
