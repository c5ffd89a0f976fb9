#include "modzhu/vertex.hpp"

#include <gtest/gtest.h>

using namespace modzhu;

namespace {

ModeIndex L(int m) { return {0, Exponent(m)}; }
ModeIndex G(int twice) { return {1, Exponent(twice, 2)}; }
ModeIndex F(int m) { return {1, Exponent(m)}; }

SparseVec unit(StateId s) { return SparseVec{{{s, 1}}}; }
SparseVec mono(StateId s, Elem c) { return c ? SparseVec{{{s, c}}} : SparseVec{}; }

struct NsSetup {
  std::shared_ptr<InducedModule> V;
  std::shared_ptr<VertexAction> S;
  SparseVec vac, omega, tau;
};

NsSetup ns_setup(unsigned p, Elem c, const Exponent& cutoff) {
  NsSetup s;
  s.V = InducedModule::vacuum(neveu_schwarz(p), {c}, cutoff);
  s.S = VertexAction::on_self(s.V);
  s.vac = unit(*s.V->state({}));
  s.omega = s.S->generator_state(0);
  s.tau = s.S->generator_state(1);
  return s;
}

std::shared_ptr<InducedModule> ramond_module(unsigned p, Elem h, Elem c, Elem root, const Exponent& cutoff) {
  const FiniteField& f = FiniteField::get(p);
  Matrix l0(f, 1, 1), f0(f, 1, 1);
  l0.at(0, 0) = h;
  f0.at(0, 0) = root;
  return InducedModule::verma(ramond(p), {c}, 1, {{0, l0}, {1, f0}}, cutoff);
}

/// Test-side derivation D on PBW monomials of the vacuum module, [D, X_M] = -(M - s) X_{M-1}
/// with s = 1 + offset - weight, D 1 = 0; it never consults the vertex recursion.
SparseVec derivation(const InducedModule& V, const SparseVec& v) {
  const FiniteField& f = V.field();
  const Presentation& P = V.presentation();
  SparseAccumulator acc(f);
  for (const auto& [s, c] : v.entries) {
    const auto& fac = V.factors(s);
    for (std::size_t i = 0; i < fac.size(); ++i) {
      const Generator& g = P.generators()[fac[i].gen];
      const Elem coef = f.neg(f.reduce(fac[i].mode - (1 + g.offset - g.weight)));
      if (!coef) continue;
      std::vector<ModeIndex> word = fac;
      word[i] = {fac[i].gen, fac[i].mode - 1};
      acc.add(f.mul(c, coef), V.straighten(word, unit(*V.state({}))));
    }
  }
  return acc.take();
}

/// D^(i) = D^i / i!.
SparseVec divided_derivation(const InducedModule& V, unsigned i, const SparseVec& v) {
  const FiniteField& f = V.field();
  SparseVec out = v;
  Elem fact = 1;
  for (unsigned k = 1; k <= i; ++k) {
    out = derivation(V, out);
    fact = f.mul(fact, f.from_int(k));
  }
  return scale(f, f.inv(fact), out);
}

/// Checks the Borcherds identity for u, v states of V on w in W:
/// sum_i binom(p,i) (u_{r+i} v)_{p+q-i} w = sum_i (-1)^i binom(r,i) [u_{p+r-i} v_{q+i} - eps (-1)^r v_{q+r-i} u_{p+i}] w.
/// Returns the number of coefficients compared; fails the test on a mismatch.
int borcherds(const VertexAction& self, const VertexAction& A, const SparseVec& u, const SparseVec& v, StateId w,
              const Exponent& p, const Exponent& q, int r) {
  const FiniteField& f = A.field();
  const Exponent du = self.degree_of(u), dv = self.degree_of(v), dw = A.module().degree_of(w);
  const bool odd = self.parity_of(u) && self.parity_of(v);
  const SparseVec wv = unit(w);
  try {
    SparseAccumulator lhs(f), rhs(f);
    for (int i = 0; du + dv - Exponent(r + i) - 1 >= Exponent(0); ++i) {
      const Elem b = f.binom(p, i);
      if (b) lhs.add(b, A.mode_act(self.mode_act(u, Exponent(r + i), v), p + q - Exponent(i), wv));
    }
    for (int i = 0; dv + dw - q - Exponent(i) - 1 >= Exponent(0); ++i) {
      Elem b = f.binom(Exponent(r), i);
      if (i % 2) b = f.neg(b);
      if (b) rhs.add(b, A.mode_act(u, p + Exponent(r - i), A.mode_act(v, q + Exponent(i), wv)));
    }
    for (int i = 0; du + dw - p - Exponent(i) - 1 >= Exponent(0); ++i) {
      Elem b = f.binom(Exponent(r), i);
      if (i % 2) b = f.neg(b);
      if (!odd) b = f.neg(b);
      if (r % 2) b = f.neg(b);
      if (b) rhs.add(b, A.mode_act(v, q + Exponent(r - i), A.mode_act(u, p + Exponent(i), wv)));
    }
    EXPECT_EQ(lhs.take(), rhs.take()) << "p=" << format_exponent(p) << " q=" << format_exponent(q) << " r=" << r
                                      << " w=" << A.module().format_state(w);
    return 1;
  } catch (const TruncationError&) {
    return 0;
  }
}

}  // namespace

TEST(VertexModes, VacuumActsAsIdentity) {
  auto s = ns_setup(7, 2, Exponent(3));
  for (const Exponent& d : s.V->degrees())
    for (StateId w : s.V->basis(d))
      for (int n = -3; n <= 2; ++n)
        if (d - Exponent(n) - 1 <= s.V->cutoff()) EXPECT_EQ(s.S->mode_act(s.vac, Exponent(n), unit(w)), n == -1 ? unit(w) : SparseVec{});
}

TEST(VertexModes, GeneratorModesOnSelf) {
  const FiniteField& f = FiniteField::get(7);
  for (Elem c = 0; c < 7; ++c) {
    auto s = ns_setup(7, c, Exponent(4));
    EXPECT_EQ(s.S->mode_act(s.omega, Exponent(3), s.omega), mono(*s.V->state({}), f.mul(c, f.inv(2))));
    for (int k = -2; k <= 3; ++k)
      for (const Exponent& d : s.V->degrees())
        for (StateId w : s.V->basis(d)) {
          if (d + Exponent(2 - k - 1) > s.V->cutoff()) continue;
          EXPECT_EQ(s.S->mode_act(s.omega, Exponent(k), unit(w)), s.V->act(L(k - 1), w));
          if (d + Exponent(1, 2) - Exponent(k) > s.V->cutoff()) continue;
          EXPECT_EQ(s.S->mode_act(s.tau, Exponent(k), unit(w)), s.V->act(G(2 * k - 1), w));
        }
  }
}

TEST(VertexModes, DOperator) {
  auto s = ns_setup(7, 3, Exponent(5));
  for (const Exponent& d : s.V->degrees())
    if (d <= Exponent(4))
      for (StateId v : s.V->basis(d)) EXPECT_EQ(d_operator(*s.S, 0, unit(v)), unit(v));
  EXPECT_EQ(d_operator(*s.S, 1, s.omega), unit(*s.V->state({L(-3)})));
  for (unsigned k = 1; k <= 4; ++k) EXPECT_TRUE(d_operator(*s.S, k, s.vac).empty());
  // D^(1) agrees with L_{-1} on every state
  for (const Exponent& d : s.V->degrees())
    if (d <= Exponent(4))
      for (StateId v : s.V->basis(d)) EXPECT_EQ(d_operator(*s.S, 1, unit(v)), s.V->act(L(-1), v));
}

TEST(VertexModes, CreationProperty) {
  auto s = ns_setup(5, 1, Exponent(5));
  for (const Exponent& d : s.V->degrees())
    if (d <= Exponent(4))
      for (StateId v : s.V->basis(d)) {
        CheckResult r = creation_check(*s.S, unit(v));
        EXPECT_TRUE(r.ok) << s.V->format_state(v) << ": " << r.detail;
      }
}

TEST(VertexModes, ModeDegreeContract) {
  auto s = ns_setup(7, 4, Exponent(5));
  for (const Exponent& du : s.V->degrees()) {
    if (du > Exponent(2)) break;
    for (StateId u : s.V->basis(du))
      for (const Exponent& dw : s.V->degrees())
        for (StateId w : s.V->basis(dw))
          for (int n = -2; n <= 3; ++n) {
            const Exponent t = du + dw - Exponent(n) - 1;
            if (t > s.V->cutoff()) continue;
            for (const auto& [r, c] : s.S->mode_act(unit(u), Exponent(n), unit(w)).entries)
              EXPECT_EQ(s.V->degree_of(r), t);
          }
  }
}

TEST(VertexModes, RamondZeroModeOfTau) {
  const FiniteField& f = FiniteField::get(5);
  for (Elem h = 0; h < 5; ++h)
    for (Elem c = 0; c < 5; ++c) {
      const Elem t = f.sub(h, f.mul(c, f.reduce(DScalar(1, 24))));
      auto root = f.sqrt(t);
      if (!root) continue;
      auto Vc = InducedModule::vacuum(neveu_schwarz(5), {c}, Exponent(3));
      auto W = ramond_module(5, h, c, *root, Exponent(3));
      VertexAction A(Vc, W, {0, 1});
      EXPECT_EQ(A.generator_twist(1), Exponent(1, 2));
      const SparseVec tau = A.generator_state(1);
      const SparseVec vh = unit(*W->state({}));
      EXPECT_EQ(A.mode_act(tau, Exponent(1, 2), vh), W->act(F(0), vh));
      EXPECT_EQ(A.mode_act(tau, Exponent(1, 2), A.mode_act(tau, Exponent(1, 2), vh)), mono(*W->state({}), t));
      EXPECT_THROW(A.mode_act(tau, Exponent(0), vh), PresentationError);
    }
}

TEST(VertexModes, LocalityOrders) {
  auto s = ns_setup(7, 3, Exponent(4));
  EXPECT_EQ(locality_order(*s.S, s.vac, s.vac, 3, 6).order, 0u);
  LocalityResult tt = locality_order(*s.S, s.tau, s.tau, 3, 6);
  ASSERT_TRUE(tt.found) << tt.detail;
  EXPECT_EQ(tt.order, 3u);
  LocalityResult oo = locality_order(*s.S, s.omega, s.omega, 3, 6);
  ASSERT_TRUE(oo.found) << oo.detail;
  EXPECT_EQ(oo.order, 4u);
}

TEST(VertexModes, LocalityDetectsBadPresentation) {
  auto s = ns_setup(7, 3, Exponent(4));
  LocalityResult r = locality_order(*s.S, s.omega, s.omega, 3, 2);
  EXPECT_FALSE(r.found);
  EXPECT_NE(r.detail.find("k = 2"), std::string::npos);
}

TEST(VertexModes, CommutatorFormulaUntwistedAndRamond) {
  const FiniteField& f = FiniteField::get(7);
  for (Elem c : {Elem(0), Elem(3)}) {
    auto s = ns_setup(7, c, Exponent(5));
    for (const SparseVec& u : {s.omega, s.tau, s.vac})
      for (const SparseVec& v : {s.omega, s.tau}) {
        CheckResult r = commutator_formula_check(*s.S, *s.S, u, v, 3);
        EXPECT_TRUE(r.ok) << r.detail;
      }
    const Elem h = 2;
    const Elem t = f.sub(h, f.mul(c, f.reduce(DScalar(1, 24))));
    auto root = f.sqrt(t);
    if (!root) continue;
    auto W = ramond_module(7, h, c, *root, Exponent(4));
    VertexAction A(s.V, W, {0, 1});
    for (const SparseVec& u : {s.omega, s.tau})
      for (const SparseVec& v : {s.omega, s.tau}) {
        CheckResult r = commutator_formula_check(*s.S, A, u, v, 3);
        EXPECT_TRUE(r.ok) << r.detail;
      }
  }
}

TEST(VertexModes, SkewSymmetry) {
  auto s = ns_setup(7, 5, Exponent(6));
  for (const SparseVec& u : {s.vac, s.omega, s.tau})
    for (const SparseVec& v : {s.vac, s.omega, s.tau}) {
      CheckResult r = skew_symmetry_check(*s.S, u, v, 4);
      EXPECT_TRUE(r.ok) << r.detail;
    }
  const SparseVec composite = unit(*s.V->state({L(-2), G(-3)}));
  EXPECT_TRUE(skew_symmetry_check(*s.S, s.tau, composite, 2).ok);
}

TEST(VertexModes, ConjugationByTranslation) {
  auto s = ns_setup(7, 2, Exponent(6));
  const FiniteField& f = FiniteField::get(7);
  std::vector<StateId> small;
  for (const Exponent& d : s.V->degrees())
    if (d <= Exponent(2))
      for (StateId x : s.V->basis(d)) small.push_back(x);
  int compared = 0;
  for (StateId u : small)
    for (StateId w : small)
      for (int n = -2; n <= 2; ++n)
        for (unsigned k = 0; k <= 3; ++k) {
          try {
            SparseAccumulator lhs(f);
            for (unsigned i = 0; i <= k; ++i) {
              SparseVec inner = s.S->mode_act(unit(u), Exponent(n), divided_derivation(*s.V, k - i, unit(w)));
              Elem sign = ((k - i) % 2) ? f.neg(1) : 1;
              lhs.add(sign, divided_derivation(*s.V, i, inner));
            }
            SparseVec rhs = s.S->mode_act(divided_derivation(*s.V, k, unit(u)), Exponent(n), unit(w));
            EXPECT_EQ(lhs.take(), rhs);
            ++compared;
          } catch (const TruncationError&) {
          }
        }
  EXPECT_GT(compared, 100);
}

TEST(VertexModes, BorcherdsIdentityOnSelf) {
  auto s = ns_setup(7, 4, Exponent(6));
  std::vector<SparseVec> vs = {s.vac, s.omega, s.tau, unit(*s.V->state({G(-5)}))};
  int compared = 0;
  for (const SparseVec& u : {s.omega, s.tau})
    for (const SparseVec& v : vs)
      for (const Exponent& d : s.V->degrees()) {
        if (d > Exponent(3, 2)) break;
        for (StateId w : s.V->basis(d))
          for (int p = -2; p <= 2; ++p)
            for (int q = -2; q <= 2; ++q)
              for (int r = -3; r <= 2; ++r) compared += borcherds(*s.S, *s.S, u, v, w, Exponent(p), Exponent(q), r);
      }
  EXPECT_GT(compared, 200);
}

TEST(VertexModes, BorcherdsIdentityOnRamondModule) {
  auto s = ns_setup(7, 1, Exponent(4));
  const FiniteField& f = FiniteField::get(7);
  Elem h = 0;
  while (!f.sqrt(f.sub(h, f.reduce(DScalar(1, 24))))) ++h;
  const Elem root = *f.sqrt(f.sub(h, f.reduce(DScalar(1, 24))));
  auto W = ramond_module(7, h, 1, root, Exponent(6));
  VertexAction A(s.V, W, {0, 1});
  int compared = 0;
  for (const SparseVec& u : {s.omega, s.tau})
    for (const SparseVec& v : {s.vac, s.omega, s.tau})
      for (const Exponent& d : W->degrees()) {
        if (d > Exponent(1)) break;
        for (StateId w : W->basis(d))
          for (int p = -2; p <= 2; ++p)
            for (int q = -2; q <= 2; ++q)
              for (int r = -3; r <= 2; ++r) {
                const Exponent pp = Exponent(p) + A.twist_of(u), qq = Exponent(q) + A.twist_of(v);
                compared += borcherds(*s.S, A, u, v, w, pp, qq, r);
              }
      }
  EXPECT_GT(compared, 200);
}
