#include "modzhu/twisted.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace modzhu;

namespace {

SparseVec unit(StateId s) { return SparseVec{{{s, 1}}}; }

ModeIndex L(int m) { return {0, Exponent(m)}; }
ModeIndex Fm(int m) { return {1, Exponent(m)}; }

/// Coefficients of prod_{n >= 1} (1 + q^n)^odd / (1 - q^n)^even up to q^top.
std::vector<long> pbw_series(int top, int even, int odd) {
  std::vector<long> a(top + 1, 0);
  a[0] = 1;
  for (int n = 1; n <= top; ++n) {
    for (int k = 0; k < odd; ++k)
      for (int i = top; i >= n; --i) a[i] += a[i - n];
    for (int k = 0; k < even; ++k)
      for (int i = n; i <= top; ++i) a[i] += a[i - n];
  }
  return a;
}

/// All y in F_{p^2} with y^2 = t, by exhaustive search.
std::vector<Elem> brute_roots(const FiniteField& F, Elem t) {
  std::vector<Elem> out;
  for (Elem y = 0; y < F.q(); ++y)
    if (F.mul(y, y) == t) out.push_back(y);
  return out;
}

struct RamondSetup {
  const FiniteField* F;
  Presentation ns, ramond;
};

RamondSetup ramond_setup(unsigned p) {
  RamondSetup s;
  s.F = &FiniteField::get(p, 2);
  s.ns = extend_field(neveu_schwarz(p), 2);
  s.ramond = extend_field(ramond(p), 2);
  return s;
}

Elem shifted(const FiniteField& F, Elem h, Elem c) { return F.sub(h, F.mul(c, F.reduce(DScalar(1, 24)))); }

FiniteLieSuperalgebra three_dim(const FiniteField& f) {
  FiniteLieSuperalgebra g(f, {"a", "u", "v"}, {0, 1, 1});
  g.set_bracket(0, 1, {{1, 1}});
  g.set_bracket(0, 2, {{2, f.neg(1)}});
  g.set_form(0, 0, 1);
  g.set_form(1, 2, 1);
  return g;
}

Matrix diag(const FiniteField& f, const std::vector<Elem>& d) {
  Matrix m(f, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

Matrix square(const FiniteField& f, std::initializer_list<std::initializer_list<Elem>> rows) {
  Matrix m(f, rows.size(), rows.size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (Elem x : r) m.at(i, j++) = x;
    ++i;
  }
  return m;
}

}  // namespace

TEST(ExtendField, KeepsTheStructure) {
  const Presentation R = extend_field(ramond(5), 2);
  EXPECT_EQ(R.field().k(), 2u);
  EXPECT_EQ(R.generators(), ramond(5).generators());
  EXPECT_EQ(R.bracket(Fm(0), Fm(0)), ramond(5).bracket(Fm(0), Fm(0)));
}

TEST(RamondVerma, ZeroModeSquareForAllParameters) {
  auto s = ramond_setup(5);
  const FiniteField& F = *s.F;
  for (Elem h = 0; h < 5; ++h)
    for (Elem c = 0; c < 5; ++c) {
      const Elem t = shifted(F, h, c);
      for (Elem root : brute_roots(F, t)) {
        auto M = ramond_verma(s.ramond, h, c, root, Exponent(3));
        const SparseVec v = unit(*M->state({}));
        EXPECT_EQ(M->act(Fm(0), M->act(Fm(0), v)), scale(F, t, v));
        EXPECT_EQ(M->act(L(0), v), scale(F, h, v));
      }
      const auto roots = brute_roots(F, t);
      Elem wrong = 0;
      while (std::find(roots.begin(), roots.end(), wrong) != roots.end()) ++wrong;
      EXPECT_THROW(ramond_verma(s.ramond, h, c, wrong, Exponent(2)), ParameterError);
    }
}

TEST(RamondVerma, GradedDimensions) {
  auto s = ramond_setup(5);
  auto M = ramond_verma(s.ramond, 1, 0, *s.F->sqrt(1), Exponent(5));
  const auto oracle = pbw_series(5, 1, 1);
  for (int d = 0; d <= 5; ++d) EXPECT_EQ(M->dimension(Exponent(d)), static_cast<std::size_t>(oracle[d]));
}

TEST(Omega, VacuumModuleOverItself) {
  auto V = InducedModule::vacuum(neveu_schwarz(7), {3}, Exponent(4));
  GradedSubspace om = omega(*V);
  const auto vecs = om.vectors(*V);
  ASSERT_EQ(vecs.size(), 1u);
  EXPECT_EQ(vecs.front(), unit(*V->state({})));
}

TEST(Omega, GenericRamondVermaAndDirectSums) {
  auto s = ramond_setup(7);
  const FiniteField& F = *s.F;
  const Elem root = *F.sqrt(shifted(F, 3, 2));
  auto M = ramond_verma(s.ramond, 3, 2, root, Exponent(3));
  GradedSubspace om = omega(*M);
  EXPECT_EQ(om.dimension(Exponent(0)), 1u);
  std::size_t total = 0;
  for (const auto& [d, e] : om.rows) total += e.rank();
  EXPECT_EQ(total, 1u);
  const Elem root2 = *F.sqrt(shifted(F, 5, 2));
  auto M2 = ramond_verma(s.ramond, 5, 2, root2, Exponent(3));
  DirectSum sum({M, M2});
  EXPECT_EQ(omega(sum).vectors(sum).size(), 2u);
}

TEST(Omega, ZhuGeneratorsActByHighestWeightData) {
  auto s = ramond_setup(5);
  const FiniteField& F = *s.F;
  for (Elem c = 0; c < 5; ++c)
    for (Elem h = 0; h < 5; ++h) {
      auto V = InducedModule::vacuum(s.ns, {c}, Exponent(3));
      for (Elem root : brute_roots(F, shifted(F, h, c))) {
        auto M = ramond_verma(s.ramond, h, c, root, Exponent(2));
        VertexAction A(V, M, {0, 1});
        const SparseVec omega_state = A.generator_state(0), tau_state = A.generator_state(1);
        const SparseVec w = unit(*M->state({}));
        const SparseVec xw = A.mode_act(omega_state, Exponent(1), w);
        const SparseVec yw = A.mode_act(tau_state, Exponent(1, 2), w);
        EXPECT_EQ(xw, scale(F, h, w));
        EXPECT_EQ(yw, scale(F, root, w));
        // y^2 - x + c/24 acts as zero on the bottom
        SparseVec rel = A.mode_act(tau_state, Exponent(1, 2), yw);
        rel = axpy(F, F.neg(1), xw, rel);
        rel = axpy(F, F.mul(c, F.reduce(DScalar(1, 24))), w, rel);
        EXPECT_TRUE(rel.empty());
      }
    }
}

TEST(TwistedVerma, MatchesRamondVermaThroughCutoffThree) {
  auto s = ramond_setup(5);
  const FiniteField& F = *s.F;
  for (Elem c = 0; c < 5; ++c) {
    auto V = InducedModule::vacuum(s.ns, {c}, Exponent(5));
    for (Elem h = 0; h < 5; ++h) {
      const Elem root = brute_roots(F, shifted(F, h, c)).front();
      BottomModule U;
      Matrix l0(F, 1, 1), f0(F, 1, 1);
      l0.at(0, 0) = h;
      f0.at(0, 0) = root;
      U.action = {{0, l0}, {1, f0}};
      TwistedVerma tv = twisted_verma(V, s.ramond, {c}, {0, 1}, U, Exponent(3));
      EXPECT_GT(tv.defects_checked, 100u);
      EXPECT_EQ(tv.defect_rank, 0u);
      auto M = ramond_verma(s.ramond, h, c, root, Exponent(3));
      for (int d = 0; d <= 3; ++d) EXPECT_EQ(tv.module->dimension(Exponent(d)), M->dimension(Exponent(d)));
    }
  }
}

TEST(TwistedVerma, RejectsBottomViolatingZhuRelation) {
  auto s = ramond_setup(5);
  const FiniteField& F = *s.F;
  auto V = InducedModule::vacuum(s.ns, {1}, Exponent(4));
  BottomModule U;
  Matrix l0(F, 1, 1), f0(F, 1, 1);
  l0.at(0, 0) = 2;
  f0.at(0, 0) = F.add(brute_roots(F, shifted(F, 2, 1)).front(), 1);
  U.action = {{0, l0}, {1, f0}};
  EXPECT_THROW(twisted_verma(V, s.ramond, {1}, {0, 1}, U, Exponent(2)), InconsistentBottomError);
}

TEST(TwistedVerma, ZeroBottomGivesZeroModule) {
  auto s = ramond_setup(5);
  auto V = InducedModule::vacuum(s.ns, {1}, Exponent(4));
  BottomModule U;
  U.dim = 0;
  TwistedVerma tv = twisted_verma(V, s.ramond, {1}, {0, 1}, U, Exponent(2));
  for (int d = 0; d <= 2; ++d) EXPECT_EQ(tv.module->dimension(Exponent(d)), 0u);
}

TEST(TwistedVerma, AffineOverDegreeZeroSubalgebra) {
  const FiniteField& f = FiniteField::get(5);
  const FiniteLieSuperalgebra g = three_dim(f);
  const Elem level = 2, lambda = 3;
  auto V = InducedModule::vacuum(affine(g), {level}, Exponent(4));
  const Presentation P = twisted_affine(g, diag(f, {1, f.neg(1), f.neg(1)}), 2);
  std::vector<int> gen_map;
  for (const auto& gen : V->presentation().generators()) gen_map.push_back(*P.find_generator(gen.name));
  BottomModule U;
  U.dim = 2;
  U.parity = {0, 1};
  Matrix a(f, 2, 2), u(f, 2, 2), v(f, 2, 2);
  a.at(0, 0) = lambda;
  a.at(1, 1) = f.add(lambda, 1);
  u.at(1, 0) = 1;
  v.at(0, 1) = level;
  U.action = {{*P.find_generator("a"), a}, {*P.find_generator("u"), u}, {*P.find_generator("v"), v}};
  TwistedVerma tv = twisted_verma(V, P, {level}, gen_map, U, Exponent(2));
  EXPECT_EQ(tv.defect_rank, 0u);
  EXPECT_GT(tv.defects_checked, 50u);
  const auto oracle = pbw_series(2, 1, 2);
  for (int d = 0; d <= 2; ++d) EXPECT_EQ(tv.module->dimension(Exponent(d)), 2u * oracle[d]);
  U.action[*P.find_generator("v")] = v.scaled(2);
  EXPECT_THROW(twisted_verma(V, P, {level}, gen_map, U, Exponent(2)), InconsistentBottomError);
}

TEST(SimpleQuotient, GenericRamondHasNoSingularVectors) {
  auto s = ramond_setup(7);
  const FiniteField& F = *s.F;
  const Elem root = *F.sqrt(shifted(F, 3, 2));
  auto M = ramond_verma(s.ramond, 3, 2, root, Exponent(2));
  SimpleQuotient q = simple_quotient(M);
  EXPECT_TRUE(q.singular_vectors.empty());
  for (int d = 0; d <= 2; ++d) EXPECT_EQ(q.module->dimension(Exponent(d)), M->dimension(Exponent(d)));
}

TEST(SimpleQuotient, DegenerateRamondLosesItsRadical) {
  auto s = ramond_setup(5);
  const FiniteField& F = *s.F;
  std::size_t degenerate = 0;
  for (Elem c = 0; c < 5; ++c)
    for (Elem h = 0; h < 5; ++h) {
      const Elem root = brute_roots(F, shifted(F, h, c)).front();
      auto M = ramond_verma(s.ramond, h, c, root, Exponent(2));
      SimpleQuotient q = simple_quotient(M);
      if (!q.singular_vectors.empty()) ++degenerate;
      for (const SparseVec& w : q.singular_vectors)
        EXPECT_TRUE(q.radical.contains(*M, w, M->degree_of(w.lead())));
      EXPECT_EQ(q.module->dimension(Exponent(0)), 1u);
      GradedSubspace om = omega(*q.module);
      EXPECT_EQ(om.vectors(*q.module).size(), 1u) << "h=" << h << " c=" << c;
    }
  EXPECT_GT(degenerate, 0u);
}

TEST(CountNs0, MatchesEnumerationOverTheQuadraticExtension) {
  for (unsigned p : {5u, 7u}) {
    const FiniteField& F = FiniteField::get(p, 2);
    for (Elem c = 0; c < p; ++c) {
      const auto params = count_ns0_irreducibles(c, p);
      std::size_t brute = 0;
      for (Elem h = 0; h < p; ++h) brute += brute_roots(F, shifted(F, F.from_int(h), F.from_int(c))).size();
      EXPECT_EQ(params.size(), brute);
      EXPECT_LE(params.size(), 2u * p);
      for (const auto& prm : params) EXPECT_EQ(F.mul(prm.root, prm.root), shifted(F, F.from_int(prm.h), F.from_int(c)));
    }
  }
  EXPECT_EQ(count_ns0_irreducibles(0, 5).size(), 9u);
  EXPECT_THROW(count_ns0_irreducibles(0, 3), ParameterError);
}

TEST(Clifford, OneDimensionalOrderTwo) {
  const FiniteField& f = FiniteField::get(7);
  CliffordPhi phi(f, square(f, {{2}}), {1}, 2);
  EXPECT_EQ(phi.kind(), CliffordCase::kEvenWithExtra);
  ASSERT_TRUE(phi.extra().has_value());
  EXPECT_TRUE(phi.homomorphism_check(4).ok);
  const Elem level = 1, alpha = 1;
  for (int sign : {1, -1}) {
    CheckResult r = clifford_pullback_check(phi, level, alpha, sign, Exponent(3));
    EXPECT_TRUE(r.ok) << r.detail;
  }
  auto Vp = clifford_module(phi, level, alpha, 1, Exponent(3));
  auto Vm = clifford_module(phi, level, alpha, -1, Exponent(3));
  const auto oracle = pbw_series(3, 0, 1);
  for (int d = 0; d <= 3; ++d) EXPECT_EQ(Vp->dimension(Exponent(d)), static_cast<std::size_t>(oracle[d]));
  CliffordDecomposition dp = decompose(*Vp, phi, alpha), dm = decompose(*Vm, phi, alpha);
  EXPECT_EQ(std::make_pair(dp.plus, dp.minus), std::make_pair(std::size_t{1}, std::size_t{0}));
  EXPECT_EQ(std::make_pair(dm.plus, dm.minus), std::make_pair(std::size_t{0}, std::size_t{1}));
  EXPECT_TRUE(simple_quotient(Vp).singular_vectors.empty());
  EXPECT_TRUE(simple_quotient(Vm).singular_vectors.empty());
  DirectSum sum({Vp, Vp, Vm});
  CliffordDecomposition ds = decompose(sum, phi, alpha);
  EXPECT_EQ(ds.plus, 2u);
  EXPECT_EQ(ds.minus, 1u);
  auto mixed = std::make_shared<DirectSum>(std::vector<ModulePtr>{Vp, Vm});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    BasisChange scrambled(mixed, seed);
    CliffordDecomposition dsc = decompose(scrambled, phi, alpha);
    EXPECT_EQ(dsc.plus, 1u);
    EXPECT_EQ(dsc.minus, 1u);
  }
  EXPECT_THROW(clifford_module(phi, level, 2, 1, Exponent(2)), ParameterError);
}

TEST(Clifford, HyperbolicPairHasOneModule) {
  const FiniteField& f = FiniteField::get(7);
  CliffordPhi phi(f, square(f, {{0, 1}, {1, 0}}), {1, 1}, 2);
  EXPECT_EQ(phi.kind(), CliffordCase::kEvenHyperbolic);
  EXPECT_FALSE(phi.extra().has_value());
  EXPECT_TRUE(phi.homomorphism_check(3).ok);
  CheckResult r = clifford_pullback_check(phi, 3, 0, 1, Exponent(3));
  EXPECT_TRUE(r.ok) << r.detail;
  auto V = clifford_module(phi, 3, 0, 1, Exponent(3));
  EXPECT_EQ(V->dimension(Exponent(0)), 2u);
  EXPECT_EQ(decompose(*V, phi, 0).plus, 1u);
  EXPECT_TRUE(simple_quotient(V).singular_vectors.empty());
  DirectSum sum({V, V});
  CliffordDecomposition ds = decompose(sum, phi, 0);
  EXPECT_EQ(ds.plus, 2u);
  EXPECT_EQ(ds.minus, 0u);
}

TEST(Clifford, OddOrderAndIdentity) {
  const FiniteField& f = FiniteField::get(7);
  CliffordPhi phi(f, square(f, {{0, 1}, {1, 0}}), {1, 2}, 3);
  EXPECT_EQ(phi.kind(), CliffordCase::kOddOrder);
  EXPECT_TRUE(phi.homomorphism_check(3).ok);
  CheckResult r = clifford_pullback_check(phi, 2, 0, 1, Exponent(3));
  EXPECT_TRUE(r.ok) << r.detail;
  CliffordPhi id(f, square(f, {{2}}), {0}, 1);
  for (int n = -3; n <= 3; ++n) EXPECT_EQ(id.map(ModeIndex{0, Exponent(n)}), (ModeIndex{0, Exponent(n)}));
  EXPECT_TRUE(id.homomorphism_check(3).ok);
}

TEST(Clifford, RejectsDegenerateAndNonNormalForms) {
  const FiniteField& f = FiniteField::get(7);
  EXPECT_THROW(CliffordPhi(f, square(f, {{0, 0}, {0, 2}}), {1, 1}, 2), ParameterError);
  EXPECT_THROW(CliffordPhi(f, square(f, {{3}}), {1}, 2), ParameterError);
  EXPECT_THROW(CliffordPhi(f, square(f, {{0, 1}, {1, 0}}), {1, 1}, 7), TwistError);
  EXPECT_THROW(CliffordPhi(f, square(f, {{2}}), {1}, 3), TwistError);
}
