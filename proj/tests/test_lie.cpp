#include "modzhu/lie.hpp"

#include <gtest/gtest.h>

using namespace modzhu;

namespace {

/// Oracle: the superconformal relations written out with exact rationals.
/// Returns the coefficient of the mode term and of the central term.
struct Expected {
  DScalar coeff;
  Exponent target_mode;
  int target;
  DScalar central;
};

Expected ns_oracle(int gi, const Exponent& r, int gj, const Exponent& s) {
  DScalar m = to_dscalar(r), n = to_dscalar(s);
  Expected e{0, r + s, 0, 0};
  if (gi == 0 && gj == 0) {
    e.coeff = m - n;
    e.target = 0;
    if (m + n == 0) e.central = (m + 1) * m * (m - 1) / 12;
  } else if (gi == 0 && gj == 1) {
    e.coeff = m / 2 - n;
    e.target = 1;
  } else if (gi == 1 && gj == 0) {
    e.coeff = -(n / 2 - m);
    e.target = 1;
  } else {
    e.coeff = 2;
    e.target = 0;
    if (m + n == 0) e.central = (m * m - DScalar(1, 4)) / 3;
  }
  return e;
}

FiniteLieSuperalgebra three_dim(const FiniteField& f) {
  FiniteLieSuperalgebra g(f, {"a", "u", "v"}, {0, 1, 1});
  g.set_bracket(0, 1, {{1, 1}});
  g.set_bracket(0, 2, {{2, f.neg(1)}});
  g.set_form(0, 0, 1);
  g.set_form(1, 2, 1);
  return g;
}

Matrix diag(const FiniteField& f, std::vector<Elem> d) {
  Matrix m(f, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

}  // namespace

TEST(Expr, PrintsCanonically) {
  using E = Expr;
  auto e = E::mul(E::mul(E::lit(1, 2), E::binom(E::add(E::m(), E::lit(1)), 3)), E::delta(E::add(E::m(), E::n())));
  EXPECT_EQ(e->print(), "1/2 * binom(m + 1, 3) * delta(m + n)");
  EXPECT_EQ(E::sub(E::m(), E::sub(E::n(), E::lit(1)))->print(), "m - (n - 1)");
  EXPECT_EQ(E::neg(E::lit(3))->print(), "-3");
  EXPECT_EQ(E::neg(E::add(E::m(), E::n()))->print(), "-(m + n)");
  EXPECT_EQ(e->eval(2, -2), DScalar(1, 2));
  EXPECT_EQ(e->eval(2, -1), DScalar(0));
}

TEST(Bracket, Examples) {
  Presentation ns = neveu_schwarz(7);
  const FiniteField& f = ns.field();
  LieElement v = ns.bracket({0, Exponent(2)}, {0, Exponent(-2)});
  LieElement expect;
  expect.add(f, ModeIndex{0, Exponent(0)}, 4);
  expect.add_central(f, 0, f.reduce(DScalar(1, 2)));
  EXPECT_EQ(v, expect);
  LieElement w = ns.bracket({1, Exponent(1, 2)}, {1, Exponent(-1, 2)});
  LieElement expect2;
  expect2.add(f, ModeIndex{0, Exponent(0)}, 2);
  EXPECT_EQ(w, expect2);
  Presentation r = ramond(7);
  LieElement x = r.bracket({1, Exponent(1)}, {1, Exponent(-1)});
  LieElement expect3;
  expect3.add(f, ModeIndex{0, Exponent(0)}, 2);
  expect3.add_central(f, 0, f.reduce(DScalar(1, 4)));
  EXPECT_EQ(x, expect3);
}

TEST(Bracket, OffLatticeIsRejected) {
  Presentation ns = neveu_schwarz(5);
  EXPECT_THROW(ns.bracket({1, Exponent(1)}, {0, Exponent(0)}), PresentationError);
  Presentation r = ramond(5);
  EXPECT_THROW(r.bracket({1, Exponent(1, 2)}, {0, Exponent(0)}), PresentationError);
}

TEST(Bracket, MatchesExplicitRelations) {
  for (unsigned p : {5u, 7u}) {
    for (bool ramond_sector : {false, true}) {
      Presentation P = ramond_sector ? ramond(p) : neveu_schwarz(p);
      const FiniteField& f = P.field();
      for (int gi = 0; gi < 2; ++gi)
        for (int gj = 0; gj < 2; ++gj)
          for (int a = -6; a <= 6; ++a)
            for (int b = -6; b <= 6; ++b) {
              Exponent r = P.generators()[gi].lattice + a, s = P.generators()[gj].lattice + b;
              Expected e = ns_oracle(gi, r, gj, s);
              LieElement expect;
              expect.add(f, ModeIndex{e.target, e.target_mode}, f.reduce(e.coeff));
              expect.add_central(f, 0, f.reduce(e.central));
              EXPECT_EQ(P.bracket({gi, r}, {gj, s}), expect);
            }
    }
  }
}

TEST(Bracket, SuperJacobiOnSuperconformalAlgebras) {
  for (unsigned p : {5u, 7u})
    for (bool ramond_sector : {false, true}) {
      Presentation P = ramond_sector ? ramond(p) : neveu_schwarz(p);
      std::vector<ModeIndex> basis;
      for (int g = 0; g < 2; ++g)
        for (int a = -4; a <= 4; ++a) basis.push_back({g, P.generators()[g].lattice + a});
      for (const auto& x : basis)
        for (const auto& y : basis)
          for (const auto& z : basis) {
            CheckResult r = super_jacobi_check(P, x, y, z);
            EXPECT_TRUE(r.ok) << r.detail;
          }
    }
}

TEST(Bracket, DegreeAdditivity) {
  Presentation P = neveu_schwarz(7);
  EXPECT_EQ(P.degree({0, Exponent(3)}), Exponent(-3));
  EXPECT_EQ(P.degree({1, Exponent(5, 2)}), Exponent(-5, 2));
  for (int gi = 0; gi < 2; ++gi)
    for (int gj = 0; gj < 2; ++gj)
      for (int a = -5; a <= 5; ++a)
        for (int b = -5; b <= 5; ++b) {
          ModeIndex x{gi, P.generators()[gi].lattice + a}, y{gj, P.generators()[gj].lattice + b};
          const LieElement& v = P.bracket(x, y);
          for (const auto& [z, c] : v.modes) EXPECT_EQ(P.degree(z), P.degree(x) + P.degree(y));
          if (!v.central.empty()) EXPECT_EQ(P.degree(x) + P.degree(y), Exponent(0));
        }
}

TEST(Restricted, NeveuSchwarz) {
  Presentation P = neveu_schwarz(5);
  PMapping pm = ns_pmapping(P);
  std::vector<ModeIndex> targets;
  for (int n = -10; n <= 10; ++n) {
    targets.push_back({0, Exponent(n)});
    targets.push_back({1, Exponent(2 * n + 1, 2)});
  }
  for (int m = -3; m <= 3; ++m) {
    CheckResult r = restrictedness_check(P, {0, Exponent(m)}, targets, pm);
    EXPECT_TRUE(r.ok) << r.detail;
  }
  EXPECT_TRUE(pm.apply(P, {0, Exponent(1)}).is_zero());
  EXPECT_THROW(pm.apply(P, {1, Exponent(1, 2)}), ParameterError);
}

TEST(Restricted, TwistedAffine) {
  const FiniteField& f = FiniteField::get(5);
  FiniteLieSuperalgebra g = three_dim(f);
  Presentation P = twisted_affine(g, diag(f, {1, f.neg(1), f.neg(1)}), 2);
  PMapping pm;
  pm.rules[0] = PMapRule{{{0, 1}}, false};
  std::vector<ModeIndex> targets;
  for (int n = -6; n <= 6; ++n) {
    targets.push_back({0, Exponent(n)});
    targets.push_back({1, Exponent(2 * n + 1, 2)});
    targets.push_back({2, Exponent(2 * n + 1, 2)});
  }
  for (int m = -2; m <= 2; ++m) {
    CheckResult r = restrictedness_check(P, {0, Exponent(m)}, targets, pm);
    EXPECT_TRUE(r.ok) << r.detail;
  }

  FiniteLieSuperalgebra h(f, {"a", "b"}, {0, 0});
  h.set_form(0, 0, 1);
  h.set_form(1, 1, 1);
  Presentation Q = twisted_affine(h, diag(f, {1, f.neg(1)}), 2);
  PMapping qm;
  qm.rules[0] = PMapRule{{}, false};
  qm.rules[1] = PMapRule{{}, false};
  std::vector<ModeIndex> qt;
  for (int n = -6; n <= 6; ++n) {
    qt.push_back({0, Exponent(n)});
    qt.push_back({1, Exponent(2 * n + 1, 2)});
  }
  ModeIndex x{1, Exponent(1, 2)};
  EXPECT_TRUE(qm.apply(Q, x).is_zero());
  CheckResult r = restrictedness_check(Q, x, qt, qm);
  EXPECT_TRUE(r.ok) << r.detail;
  qm.rules[1] = PMapRule{{{1, 1}}, false};
  LieElement image = qm.apply(Q, x);
  ASSERT_EQ(image.modes.size(), 1u);
  EXPECT_EQ(image.modes.begin()->first.mode, Exponent(5, 2));
}

TEST(Twist, Decompositions) {
  const FiniteField& f = FiniteField::get(5);
  FiniteLieSuperalgebra g = three_dim(f);
  auto id = twist_decompose(g, Matrix::identity(f, 3), 1);
  ASSERT_EQ(id.size(), 1u);
  EXPECT_EQ(id[0].basis.cols(), 3u);
  auto two = twist_decompose(g, diag(f, {1, f.neg(1), f.neg(1)}), 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].basis.cols(), 1u);
  EXPECT_EQ(two[0].basis.at(0, 0), 1u);
  EXPECT_EQ(two[1].basis.cols(), 2u);
  EXPECT_EQ(two[1].basis.at(0, 0), 0u);
  EXPECT_EQ(two[1].basis.at(0, 1), 0u);

  FiniteLieSuperalgebra c(f, {"e"}, {1});
  c.set_form(0, 0, 1);
  auto cl = twist_decompose(c, diag(f, {f.neg(1)}), 2);
  EXPECT_EQ(cl[0].basis.cols(), 0u);
  EXPECT_EQ(cl[1].basis.cols(), 1u);
}

TEST(Twist, Errors) {
  const FiniteField& f = FiniteField::get(5);
  FiniteLieSuperalgebra g = three_dim(f);
  EXPECT_THROW(twist_decompose(g, diag(f, {1, f.neg(1), f.neg(1)}), 5), TwistError);
  EXPECT_THROW(twist_decompose(g, diag(f, {1, f.neg(1), f.neg(1)}), 1), TwistError);
  FiniteLieSuperalgebra h(f, {"a", "b"}, {0, 0});
  h.set_form(0, 0, 1);
  h.set_form(1, 1, 1);
  // An order-3 twist needs a cube root of unity, which F_5 lacks.
  Matrix rot(f, 2, 2);
  rot.at(0, 1) = f.neg(1);
  rot.at(1, 0) = 1;
  rot.at(1, 1) = f.neg(1);
  EXPECT_THROW(twist_decompose(h, rot, 3), TwistError);
}

TEST(Affine, FormInvarianceAndRelations) {
  const FiniteField& f = FiniteField::get(7);
  FiniteLieSuperalgebra g = three_dim(f);
  EXPECT_TRUE(g.validate().ok);
  for (int a = 0; a < 3; ++a)
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v) {
        if (g.parity[a]) continue;
        std::vector<Elem> ea(3, 0), eu(3, 0), ev(3, 0);
        ea[a] = eu[u] = ev[v] = 1;
        auto au = g.bracket(ea, eu), av = g.bracket(ea, ev);
        Elem lhs = 0, rhs = 0;
        for (int t = 0; t < 3; ++t) {
          lhs = f.add(lhs, f.mul(au[t], g.form.at(t, v)));
          rhs = f.add(rhs, f.mul(g.form.at(u, t), av[t]));
        }
        EXPECT_EQ(lhs, f.neg(rhs));
      }
  Presentation P = affine(g);
  LieElement aa = P.bracket({0, Exponent(3)}, {0, Exponent(-3)});
  LieElement e1;
  e1.add_central(f, 0, 3);
  EXPECT_EQ(aa, e1);
  LieElement uv = P.bracket({1, Exponent(2)}, {2, Exponent(-3)});
  LieElement k1;
  k1.add_central(f, 0, 1);
  EXPECT_EQ(uv, k1);
  LieElement au = P.bracket({0, Exponent(1)}, {1, Exponent(2)});
  LieElement e2;
  e2.add(f, ModeIndex{1, Exponent(3)}, 1);
  EXPECT_EQ(au, e2);

  FiniteLieSuperalgebra bad(f, {"u", "v"}, {1, 1});
  bad.set_bracket(0, 1, {{0, 1}});
  EXPECT_THROW(affine(bad), ParameterError);
}

TEST(Affine, TwistedJacobiAndLatticeArithmetic) {
  const FiniteField& f = FiniteField::get(5);
  Presentation P = twisted_affine(three_dim(f), diag(f, {1, f.neg(1), f.neg(1)}), 2);
  std::vector<ModeIndex> basis;
  for (int g = 0; g < 3; ++g)
    for (int a = -3; a <= 3; ++a) basis.push_back({g, P.generators()[g].lattice + a});
  for (const auto& x : basis)
    for (const auto& y : basis) {
      for (const auto& [z, c] : P.bracket(x, y).modes)
        EXPECT_TRUE(is_integral(z.mode - x.mode - y.mode));
      for (const auto& z : basis) EXPECT_TRUE(super_jacobi_check(P, x, y, z).ok);
    }
}

TEST(Clifford, Relations) {
  const FiniteField& f = FiniteField::get(5);
  Matrix form(f, 1, 1);
  form.at(0, 0) = 1;
  Presentation P = clifford_affine(f, form);
  LieElement k;
  k.add_central(f, 0, 1);
  EXPECT_EQ(P.bracket({0, Exponent(1)}, {0, Exponent(-2)}), k);
  EXPECT_TRUE(P.bracket({0, Exponent(1)}, {0, Exponent(-1)}).is_zero());
}
