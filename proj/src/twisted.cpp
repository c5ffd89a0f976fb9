#include "modzhu/twisted.hpp"

#include "modzhu/presentation_format.hpp"

#include <set>
#include <sstream>

namespace modzhu {

Presentation extend_field(const Presentation& P, unsigned k) {
  if (P.field().k() == k) return P;
  PresentationDocument doc = document_from(P);
  doc.extension = k;
  return build_presentation(doc);
}

namespace {

/// Kernel of the stacked matrices of the given modes on degree d, as vectors of module ids.
std::vector<SparseVec> joint_kernel(const GradedModule& M, const std::vector<ModeIndex>& modes, const Exponent& d) {
  const std::size_t n = M.dimension(d);
  std::vector<SparseVec> out;
  if (n == 0) return out;
  Matrix stacked(M.field(), 0, n);
  for (const auto& x : modes) {
    const Exponent t = d + M.mode_degree(x);
    if (t < Exponent(0) || t > M.cutoff()) continue;
    stacked = stacked.vstack(M.mode_matrix(x, d));
  }
  const Matrix K = stacked.kernel();
  for (std::size_t j = 0; j < K.cols(); ++j) out.push_back(M.column_vector(K, j, d));
  return out;
}

Matrix bottom_matrix(const BottomModule& U, const FiniteField& f, int gen) {
  auto it = U.action.find(gen);
  return it == U.action.end() ? Matrix(f, U.dim, U.dim) : it->second;
}

}  // namespace

GradedSubspace omega(const GradedModule& M) {
  GradedSubspace S;
  const std::vector<ModeIndex> modes = M.lowering_modes();
  for (const Exponent& d : M.degrees())
    for (const SparseVec& v : joint_kernel(M, modes, d)) S.insert(M, v, d);
  for (auto& [d, e] : S.rows) e.make_reduced();
  return S;
}

CheckResult bottom_consistency(const Presentation& P, const std::vector<Elem>& central_values, const BottomModule& U) {
  const FiniteField& f = P.field();
  for (const auto& [g, A] : U.action)
    if (A.rows() != U.dim || A.cols() != U.dim) return {false, "bottom matrix of " + P.generators()[g].name + " has the wrong size"};
  std::vector<ModeIndex> zero;
  for (int g = 0; g < static_cast<int>(P.generators().size()); ++g) {
    const ModeIndex x{g, P.generators()[g].offset};
    if (P.on_lattice(x)) zero.push_back(x);
  }
  for (std::size_t a = 0; a < zero.size(); ++a)
    for (std::size_t b = a; b < zero.size(); ++b) {
      const ModeIndex& x = zero[a];
      const ModeIndex& y = zero[b];
      const Matrix X = bottom_matrix(U, f, x.gen), Y = bottom_matrix(U, f, y.gen);
      Matrix lhs = X * Y;
      const bool both_odd = P.parity(x.gen) && P.parity(y.gen);
      lhs = both_odd ? lhs + Y * X : lhs - Y * X;
      Matrix rhs(f, U.dim, U.dim);
      const LieElement br = P.bracket(x, y);
      for (const auto& [m, c] : br.modes) {
        if (P.degree(m) != Exponent(0)) return {false, "bracket of degree-zero modes leaves degree zero"};
        rhs = rhs + bottom_matrix(U, f, m.gen).scaled(c);
      }
      for (const auto& [k, c] : br.central) rhs = rhs + Matrix::identity(f, U.dim).scaled(f.mul(c, central_values.at(k)));
      if (!(lhs == rhs))
        return {false, "[" + P.format_mode(x) + ", " + P.format_mode(y) + "] = " + P.format(br) + " fails on the bottom"};
    }
  return {};
}

TwistedVerma twisted_verma(std::shared_ptr<const InducedModule> V, const Presentation& P,
                           const std::vector<Elem>& central_values, const std::vector<int>& gen_map,
                           const BottomModule& U, const Exponent& cutoff) {
  CheckResult ok = bottom_consistency(P, central_values, U);
  if (!ok.ok) throw InconsistentBottomError(ok.detail);
  TwistedVerma out;
  out.induced = InducedModule::verma(P, central_values, U.dim, U.action, cutoff, U.parity);
  const FiniteField& f = P.field();
  const auto self_ptr = VertexAction::on_self(V);
  const VertexAction& self = *self_ptr;
  VertexAction A(V, out.induced, gen_map);
  const InducedModule& M = *out.induced;
  std::vector<SparseVec> defects;
  const int ngen = static_cast<int>(gen_map.size());
  for (int iu = 0; iu < ngen; ++iu)
    for (int iv = 0; iv < ngen; ++iv) {
      const SparseVec u = A.generator_state(iu), v = A.generator_state(iv);
      const Exponent du = A.degree_of(u), dv = A.degree_of(v);
      const bool odd = A.parity_of(u) && A.parity_of(v);
      for (const Exponent& dw : M.degrees())
        for (StateId w : M.basis(dw)) {
          const SparseVec wv{{{w, 1}}};
          // u_p changes degree by du - p - 1; keep every intermediate vector inside [0, cutoff]
          for (Exponent p = A.generator_twist(iu) + Exponent(floor_exp(du - 1 - (cutoff - dw) - A.generator_twist(iu)));
               du - p - 1 >= -dw; p += 1) {
            if (du - p - 1 > cutoff - dw) continue;
            for (Exponent q = A.generator_twist(iv) + Exponent(floor_exp(dv - 1 - (cutoff - dw) - A.generator_twist(iv)));
                 dv - q - 1 >= -dw; q += 1) {
              const Exponent target = dw + du - p - 1 + dv - q - 1;
              if (dv - q - 1 > cutoff - dw || target < Exponent(0) || target > cutoff) continue;
              const std::int64_t rmax = floor_exp(du + dv);
              for (std::int64_t r = 0; r <= rmax; ++r) {
                try {
                  SparseAccumulator acc(f);
                  for (std::int64_t i = 0; du + dv - Exponent(r + i) - 1 >= Exponent(0); ++i) {
                    const Elem b = f.binom(p, static_cast<unsigned>(i));
                    if (b) acc.add(b, A.mode_act(self.mode_act(u, Exponent(r + i), v), p + q - Exponent(i), wv));
                  }
                  for (std::int64_t i = 0; dv + dw - q - Exponent(i) - 1 >= Exponent(0); ++i) {
                    Elem b = f.binom(Exponent(r), static_cast<unsigned>(i));
                    if (i % 2 == 0) b = f.neg(b);
                    if (b) acc.add(b, A.mode_act(u, p + Exponent(r - i), A.mode_act(v, q + Exponent(i), wv)));
                  }
                  for (std::int64_t i = 0; du + dw - p - Exponent(i) - 1 >= Exponent(0); ++i) {
                    Elem b = f.binom(Exponent(r), static_cast<unsigned>(i));
                    if (i % 2) b = f.neg(b);
                    if (odd) b = f.neg(b);
                    if (r % 2) b = f.neg(b);
                    if (b) acc.add(b, A.mode_act(v, q + Exponent(r - i), A.mode_act(u, p + Exponent(i), wv)));
                  }
                  ++out.defects_checked;
                  SparseVec d = acc.take();
                  if (d.empty()) continue;
                  if (target == Exponent(0))
                    throw InconsistentBottomError("associativity defect in degree zero: " + M.format(d));
                  defects.push_back(std::move(d));
                } catch (const TruncationError&) {
                }
              }
            }
          }
        }
    }
  GradedSubspace W = submodule_closure(M, defects);
  for (const auto& [d, e] : W.rows) out.defect_rank += e.rank();
  out.module = std::make_shared<QuotientModule>(out.induced, std::move(W));
  return out;
}

std::shared_ptr<InducedModule> ramond_verma(const Presentation& R, Elem h, Elem c, Elem root, const Exponent& cutoff) {
  const FiniteField& f = R.field();
  const Elem target = f.sub(h, f.mul(c, f.reduce(DScalar(1, 24))));
  if (f.mul(root, root) != target)
    throw ParameterError("root^2 must equal h - c/24 = " + f.format(target) + ", got root " + f.format(root));
  Matrix l0(f, 1, 1), f0(f, 1, 1);
  l0.at(0, 0) = h;
  f0.at(0, 0) = root;
  return InducedModule::verma(R, {c}, 1, {{0, l0}, {1, f0}}, cutoff);
}

SimpleQuotient simple_quotient(ModulePtr M) {
  SimpleQuotient out;
  const FiniteField& f = M->field();
  const std::vector<ModeIndex> modes = M->lowering_modes();
  for (const Exponent& d : M->degrees()) {
    if (d == Exponent(0)) continue;
    const std::size_t n = M->dimension(d);
    if (n == 0) continue;
    // rows: coordinates of x w in M_t / J_t for every lowering mode x
    std::vector<SparseVec> images(n);
    Matrix stacked(f, 0, n);
    for (const auto& x : modes) {
      const Exponent t = d + M->mode_degree(x);
      if (t < Exponent(0)) continue;
      const std::size_t m = M->dimension(t);
      if (m == 0) continue;
      Matrix block(f, m, n);
      auto jt = out.radical.rows.find(t);
      for (std::size_t j = 0; j < n; ++j) {
        SparseVec img = M->act(x, M->basis(d)[j]);
        if (jt != out.radical.rows.end()) img = out.radical.reduce(*M, img, t);
        for (const auto& [s, c] : img.entries) block.at(M->position(s), j) = c;
      }
      stacked = stacked.vstack(block);
    }
    const Matrix K = stacked.kernel();
    for (std::size_t j = 0; j < K.cols(); ++j) out.radical.insert(*M, M->column_vector(K, j, d), d);
    auto it = out.radical.rows.find(d);
    if (it != out.radical.rows.end()) it->second.make_reduced();
  }
  const GradedSubspace om = omega(*M);
  for (const SparseVec& v : om.vectors(*M))
    if (M->degree_of(v.lead()) > Exponent(0)) out.singular_vectors.push_back(v);
  out.module = std::make_shared<QuotientModule>(M, out.radical);
  return out;
}

std::vector<NsParameter> count_ns0_irreducibles(Elem c, unsigned p) {
  if (p <= 3) throw ParameterError("the NS0 count needs p > 3");
  const FiniteField& F = FiniteField::get(p, 2);
  const Elem shift = F.mul(F.from_int(c), F.reduce(DScalar(1, 24)));
  std::vector<NsParameter> out;
  for (unsigned h = 0; h < p; ++h)
    for (Elem y : F.sqrts(F.sub(F.from_int(h), shift))) out.push_back({static_cast<Elem>(h), y});
  return out;
}

std::vector<SparseVec> ns_restricted_ideal_generators(const InducedModule& V) {
  const std::optional<int> L = V.presentation().find_generator("L");
  if (!L) throw ParameterError("the vacuum module has no generator L");
  const unsigned p = V.field().p();
  const SparseVec vac{{{*V.state({}), 1}}};
  std::vector<SparseVec> out;
  for (std::int64_t n = 2; Exponent(n * p) <= V.cutoff(); ++n) {
    const ModeIndex x{*L, Exponent(-n)};
    SparseVec g = V.straighten(std::vector<ModeIndex>(p, x), vac);
    if (n % p == 0) g = axpy(V.field(), V.field().neg(1), V.straighten({ModeIndex{*L, Exponent(-n * p)}}, vac), g);
    if (!g.empty()) out.push_back(std::move(g));
  }
  return out;
}

namespace {

enum Role { kRegular = 0, kH = 1, kHStar = 2, kE = 3 };

}  // namespace

CliffordPhi::CliffordPhi(const FiniteField& f, const Matrix& form, std::vector<unsigned> eigen_index, unsigned T)
    : T_(T) {
  const std::size_t d = form.rows();
  if (form.cols() != d || eigen_index.size() != d) throw ParameterError("form and eigenvalue data must have equal size");
  if (T == 0 || T % f.p() == 0) throw TwistError("the order T must be positive and prime to p");
  for (unsigned i : eigen_index)
    if (i >= T) throw TwistError("eigen index out of range");
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (form.at(a, b) && (eigen_index[a] + eigen_index[b]) % T != 0)
        throw TwistError("tau does not preserve the form");
  if (form.rank() != d) throw ParameterError("the form is degenerate");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) names.push_back(d == 1 ? "e" : "e" + std::to_string(i + 1));
  FiniteLieSuperalgebra g(f, names, std::vector<int>(d, 1));
  g.form = form;
  untwisted_ = affine(g, "clifford");
  std::vector<Exponent> lattices;
  for (unsigned i : eigen_index) {
    exponent_.push_back(Exponent(i, T));
    lattices.push_back(Exponent(i, T));
  }
  twisted_ = loop_algebra(g, lattices, "twisted_clifford");
  role_.assign(d, kRegular);
  std::vector<int> half;
  if (T % 2 == 0)
    for (std::size_t i = 0; i < d; ++i)
      if (2 * eigen_index[i] == T) half.push_back(static_cast<int>(i));
  Matrix B(f, half.size(), half.size());
  for (std::size_t a = 0; a < half.size(); ++a)
    for (std::size_t b = 0; b < half.size(); ++b) B.at(a, b) = form.at(half[a], half[b]);
  if (B.rank() != half.size()) throw ParameterError("the form restricted to the T/2 eigenspace is degenerate");
  const std::string normal = "the form on the T/2 eigenspace must consist of pairs <h, h*> = 1 and at most one <e, e> = 2";
  std::set<int> used;
  for (int a : half) {
    if (used.count(a)) continue;
    std::vector<int> partners;
    for (int b : half)
      if (form.at(a, b)) partners.push_back(b);
    if (partners.size() != 1) throw ParameterError(normal);
    const int b = partners.front();
    if (b == a) {
      if (form.at(a, a) != 2 || extra_) throw ParameterError(normal);
      extra_ = a;
      role_[a] = kE;
    } else {
      if (form.at(a, b) != 1) throw ParameterError(normal);
      role_[a] = kH;
      role_[b] = kHStar;
      pairs_.emplace_back(a, b);
      used.insert(b);
    }
    used.insert(a);
  }
  if (T % 2) kind_ = CliffordCase::kOddOrder;
  else kind_ = half.size() % 2 ? CliffordCase::kEvenWithExtra : CliffordCase::kEvenHyperbolic;
}

ModeIndex CliffordPhi::map(const ModeIndex& x) const {
  if (x.mode.denominator() != 1) throw PresentationError("untwisted Clifford modes are integral");
  const Exponent& r = exponent_.at(x.gen);
  switch (role_.at(x.gen)) {
    case kH: return {x.gen, x.mode + Exponent(1, 2)};
    case kHStar: return {x.gen, x.mode - Exponent(1, 2)};
    case kE: return {x.gen, x.mode >= Exponent(0) ? x.mode + Exponent(1, 2) : x.mode - Exponent(1, 2)};
    default: break;
  }
  if (r * 2 < Exponent(1)) return {x.gen, x.mode + r};
  return {x.gen, x.mode + r - 1};
}

LieElement CliffordPhi::map(const LieElement& x) const {
  LieElement out;
  const FiniteField& f = twisted_.field();
  for (const auto& [m, c] : x.modes) out.add(f, map(m), c);
  for (const auto& [k, c] : x.central) out.add_central(f, k, c);
  return out;
}

std::vector<ModeIndex> CliffordPhi::annihilators(const Exponent& window) const {
  std::vector<ModeIndex> out;
  for (int g = 0; g < static_cast<int>(exponent_.size()); ++g)
    for (int n = 0;; ++n) {
      const ModeIndex y = map(ModeIndex{g, Exponent(n)});
      const Exponent deg = twisted_.degree(y);
      if (deg < -window) break;
      if (deg <= Exponent(0)) out.push_back(y);
    }
  return out;
}

CheckResult CliffordPhi::homomorphism_check(int range) const {
  const int d = static_cast<int>(exponent_.size());
  std::set<ModeIndex> image;
  for (int a = 0; a < d; ++a)
    for (int n = -range; n <= range; ++n) {
      const ModeIndex x{a, Exponent(n)};
      const ModeIndex fx = map(x);
      twisted_.require_lattice(fx);
      image.insert(fx);
      for (int b = 0; b < d; ++b)
        for (int m = -range; m <= range; ++m) {
          const ModeIndex y{b, Exponent(m)};
          const LieElement lhs = twisted_.bracket(lie_mode(fx), lie_mode(map(y)));
          const LieElement rhs = map(untwisted_.bracket(x, y));
          if (!(lhs == rhs))
            return {false, "[phi(" + untwisted_.format_mode(x) + "), phi(" + untwisted_.format_mode(y) + ")] = " +
                               twisted_.format(lhs) + " but phi of the bracket is " + twisted_.format(rhs)};
        }
    }
  // every twisted mode well inside the window is hit, except e_{-1/2}
  for (int a = 0; a < d; ++a)
    for (int n = -range + 1; n <= range - 1; ++n) {
      const ModeIndex y{a, Exponent(n) + exponent_[a]};
      const bool is_extra = extra_ && *extra_ == a && y.mode == Exponent(-1, 2);
      if (image.count(y) == is_extra)
        return {false, twisted_.format_mode(y) + (is_extra ? " lies in the image" : " is not in the image")};
    }
  return {};
}

namespace {

/// Sign (-1)^{#{j in S : j < i}} for the exterior algebra on the h generators.
Elem wedge_sign(const FiniteField& f, unsigned S, unsigned i) {
  unsigned below = 0;
  for (unsigned j = 0; j < i; ++j)
    if (S & (1u << j)) ++below;
  return below % 2 ? f.neg(1) : 1;
}

}  // namespace

std::shared_ptr<InducedModule> clifford_module(const CliffordPhi& phi, Elem level, Elem alpha, int sign,
                                               const Exponent& cutoff) {
  const Presentation& P = phi.twisted();
  const FiniteField& f = P.field();
  const auto& pairs = phi.hyperbolic_pairs();
  const unsigned r = static_cast<unsigned>(pairs.size());
  const std::size_t dim = std::size_t{1} << r;
  BottomModule U;
  U.dim = dim;
  for (unsigned S = 0; S < dim; ++S) U.parity.push_back(__builtin_popcount(S) % 2);
  for (unsigned i = 0; i < r; ++i) {
    Matrix H(f, dim, dim), Hs(f, dim, dim);
    for (unsigned S = 0; S < dim; ++S) {
      if (!(S & (1u << i))) H.at(S | (1u << i), S) = wedge_sign(f, S, i);
      else Hs.at(S & ~(1u << i), S) = f.mul(level, wedge_sign(f, S, i));
    }
    U.action[pairs[i].first] = H;
    U.action[pairs[i].second] = Hs;
  }
  if (phi.extra()) {
    Matrix E(f, dim, dim);
    const Elem a = sign > 0 ? alpha : f.neg(alpha);
    for (unsigned S = 0; S < dim; ++S) E.at(S, S) = U.parity[S] ? f.neg(a) : a;
    U.action[*phi.extra()] = E;
  }
  CheckResult ok = bottom_consistency(P, {level}, U);
  if (!ok.ok) throw ParameterError("Clifford bottom is inconsistent (is alpha^2 = level?): " + ok.detail);
  return InducedModule::verma(P, {level}, dim, U.action, cutoff, U.parity);
}

CheckResult clifford_pullback_check(const CliffordPhi& phi, Elem level, Elem alpha, int sign, const Exponent& cutoff) {
  const FiniteField& f = phi.twisted().field();
  auto V = InducedModule::vacuum(phi.untwisted(), {level}, cutoff);
  auto W = clifford_module(phi, level, alpha, sign, cutoff * 2);
  const SparseVec v0{{{*W->state({}), 1}}};
  std::map<StateId, SparseVec> psi;
  Echelon images(f);
  for (const Exponent& d : V->degrees())
    for (StateId s : V->basis(d)) {
      std::vector<ModeIndex> word;
      for (const auto& x : V->factors(s)) word.push_back(phi.map(x));
      psi[s] = W->straighten(word, v0);
      images.insert(psi[s]);
    }
  std::size_t total = psi.size();
  if (images.rank() != total) return {false, "the map from V to the twisted module is not injective"};
  auto apply = [&](const SparseVec& v) {
    SparseAccumulator acc(f);
    for (const auto& [s, c] : v.entries) acc.add(c, psi.at(s));
    return acc.take();
  };
  const Elem a = sign > 0 ? alpha : f.neg(alpha);
  for (const Exponent& d : V->degrees())
    for (StateId s : V->basis(d)) {
      if (phi.extra()) {
        const ModeIndex e{*phi.extra(), Exponent(-1, 2)};
        const Elem expect = V->parity_of(s) ? f.neg(a) : a;
        if (!(W->act(e, psi[s]) == scale(f, expect, psi[s])))
          return {false, "e_{-1/2} does not act by the parity sign on " + V->format_state(s)};
      }
      for (const auto& x : V->window_modes()) {
        const Exponent t = d + V->mode_degree(x);
        if (t < Exponent(0) || t > V->cutoff()) continue;
        try {
          const SparseVec lhs = apply(V->act(x, s));
          const SparseVec rhs = W->act(phi.map(x), psi[s]);
          if (!(lhs == rhs))
            return {false, "phi(" + phi.untwisted().format_mode(x) + ") on " + V->format_state(s) + " gives " +
                               W->format(rhs) + " instead of " + W->format(lhs)};
        } catch (const TruncationError&) {
        }
      }
    }
  return {};
}

CliffordDecomposition decompose(const GradedModule& M, const CliffordPhi& phi, Elem alpha) {
  const FiniteField& f = M.field();
  CliffordDecomposition out;
  const std::vector<ModeIndex> modes = phi.annihilators(M.cutoff());
  for (const Exponent& d : M.degrees()) {
    const std::vector<SparseVec> kernel = joint_kernel(M, modes, d);
    out.omega_dim += kernel.size();
    for (std::size_t i = 0; i < kernel.size(); ++i) out.omega_degrees.push_back(d);
    if (!phi.extra()) {
      out.plus += kernel.size();
      continue;
    }
    const ModeIndex e{*phi.extra(), Exponent(-1, 2)};
    Echelon plus(f), minus(f);
    for (const SparseVec& w : kernel) {
      const SparseVec ew = M.act(e, w);
      plus.insert(axpy(f, alpha, w, ew));
      minus.insert(axpy(f, f.neg(alpha), w, ew));
    }
    out.plus += plus.rank();
    out.minus += minus.rank();
  }
  return out;
}

}  // namespace modzhu
