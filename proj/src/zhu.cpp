#include "modzhu/zhu.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace modzhu {

namespace {

unsigned order_of(const std::vector<Exponent>& exps, unsigned p, const char* what) {
  std::int64_t T = 1;
  for (const auto& e : exps) T = lcm64(T, e.denominator());
  if (T % p == 0) throw TwistError(std::string("p divides the order of ") + what);
  return static_cast<unsigned>(T);
}

}  // namespace

Exponent TwistData::g_exponent(const InducedModule& V, StateId s) const {
  Exponent t(0);
  for (const auto& x : V.factors(s)) t += theta.at(x.gen);
  return frac_exp(t);
}

Exponent TwistData::star_exponent(const InducedModule& V, StateId s) const {
  Exponent t(0);
  for (const auto& x : V.factors(s)) t += star.at(x.gen);
  return frac_exp(t);
}

TwistData make_twist(const Presentation& P, std::vector<Exponent> theta) {
  if (theta.size() != P.generators().size()) throw TwistError("one eigenvalue exponent per generator is required");
  TwistData t;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta[i] = frac_exp(theta[i]);
    t.star.push_back(frac_exp(theta[i] + Exponent(P.parity(static_cast<int>(i)), 2)));
  }
  t.theta = std::move(theta);
  t.T = order_of(t.theta, P.prime(), "g");
  t.T0 = order_of(t.star, P.prime(), "g sigma");
  return t;
}

TwistData parity_twist(const Presentation& P) {
  std::vector<Exponent> theta;
  for (const auto& g : P.generators()) theta.push_back(Exponent(g.parity, 2));
  return make_twist(P, std::move(theta));
}

ZhuAlgebra::ZhuAlgebra(std::shared_ptr<const VertexAction> self, TwistData twist, const Exponent& D,
                       const std::vector<SparseVec>& extra)
    : self_(std::move(self)), twist_(std::move(twist)), D_(D), O_(self_->field()) {
  const InducedModule& V = algebra();
  if (V.cutoff() < D_) throw TruncationError("the vacuum module cutoff is below the Zhu cutoff");
  std::vector<StateId> states;
  for (const Exponent& d : V.degrees())
    if (d <= D_)
      for (StateId s : V.basis(d)) states.push_back(s);
  for (StateId a : states) {
    if (V.factors(a).empty()) continue;
    for (StateId b : states) {
      const SparseVec bv{{{b, 1}}};
      for (unsigned n = 0; top_degree(a, V.degree_of(b), n) <= D_; ++n) {
        SparseVec c = circle_state(a, bv, 0, n);
        ++generated_;
        if (!c.empty()) O_.insert(std::move(c));
      }
    }
  }
  for (const SparseVec& v : extra) {
    for (const auto& [s, c] : v.entries)
      if (V.degree_of(s) > D_) throw TruncationError("extra vector above the Zhu cutoff");
    ++generated_;
    O_.insert(v);
  }
  O_.make_reduced();
}

Exponent ZhuAlgebra::top_degree(StateId u, const Exponent& dv, unsigned n) const {
  const Exponent du = algebra().degree_of(u);
  if (twist_.star_exponent(algebra(), u) == Exponent(0)) return du + dv + Exponent(n) + 1;
  return du + dv + Exponent(n);
}

SparseVec ZhuAlgebra::circle_state(StateId u, const SparseVec& v, unsigned m, unsigned n) const {
  const InducedModule& V = algebra();
  const FiniteField& f = field();
  if (v.empty()) return {};
  const Exponent du = V.degree_of(u);
  const Exponent r = twist_.star_exponent(V, u);
  Exponent dv(0);
  for (const auto& [s, c] : v.entries) dv = std::max(dv, V.degree_of(s));
  const bool untwisted = r == Exponent(0);
  const Exponent E = untwisted ? du + Exponent(m) : du - 1 + r + Exponent(m);
  const std::int64_t shift = untwisted ? static_cast<std::int64_t>(n) + 2 : static_cast<std::int64_t>(n) + 1;
  const SparseVec uv{{{u, 1}}};
  SparseAccumulator acc(f);
  for (std::int64_t i = 0; du + dv - Exponent(i - shift) - 1 >= Exponent(0); ++i) {
    const Elem b = f.binom(E, static_cast<unsigned>(i));
    if (b) acc.add(b, self_->mode_act(uv, Exponent(i - shift), v));
  }
  return acc.take();
}

SparseVec ZhuAlgebra::circle(const SparseVec& u, const SparseVec& v, unsigned n) const {
  return shifted_circle(u, v, 0, n);
}

SparseVec ZhuAlgebra::shifted_circle(const SparseVec& u, const SparseVec& v, unsigned m, unsigned n) const {
  SparseAccumulator acc(field());
  for (const auto& [s, c] : u.entries) acc.add(c, circle_state(s, v, m, n));
  return acc.take();
}

SparseVec ZhuAlgebra::star(const SparseVec& u, const SparseVec& v) const {
  const InducedModule& V = algebra();
  const FiniteField& f = field();
  if (v.empty()) return {};
  Exponent dv(0);
  for (const auto& [s, c] : v.entries) dv = std::max(dv, V.degree_of(s));
  SparseAccumulator acc(f);
  for (const auto& [s, c] : u.entries) {
    if (twist_.star_exponent(V, s) != Exponent(0)) continue;
    const Exponent du = V.degree_of(s);
    const SparseVec sv{{{s, 1}}};
    for (std::int64_t i = 0; Exponent(i) <= du + dv; ++i) {
      const Elem b = f.binom(du, static_cast<unsigned>(i));
      if (b) acc.add(f.mul(c, b), self_->mode_act(sv, Exponent(i - 1), v));
    }
  }
  return acc.take();
}

SparseVec ZhuAlgebra::commutator_residue(const SparseVec& u, const SparseVec& v) const {
  const InducedModule& V = algebra();
  const FiniteField& f = field();
  if (v.empty()) return {};
  Exponent dv(0);
  for (const auto& [s, c] : v.entries) dv = std::max(dv, V.degree_of(s));
  SparseAccumulator acc(f);
  for (const auto& [s, c] : u.entries) {
    const Exponent du = V.degree_of(s);
    const SparseVec sv{{{s, 1}}};
    for (std::int64_t i = 0; Exponent(i) <= du + dv - 1; ++i) {
      const Elem b = f.binom(du - 1, static_cast<unsigned>(i));
      if (b) acc.add(f.mul(c, b), self_->mode_act(sv, Exponent(i), v));
    }
  }
  return acc.take();
}

SparseVec ZhuAlgebra::reduce(const SparseVec& v) const {
  for (const auto& [s, c] : v.entries)
    if (algebra().degree_of(s) > D_) throw TruncationError("vector above the Zhu cutoff");
  return O_.reduce(v);
}

SparseVec ZhuAlgebra::product(const SparseVec& x, const SparseVec& y) const { return reduce(star(x, y)); }

SparseVec ZhuAlgebra::bracket(const SparseVec& x, const SparseVec& y) const {
  const FiniteField& f = field();
  const bool odd = self_->parity_of(x) && self_->parity_of(y);
  return axpy(f, odd ? 1 : f.neg(1), product(y, x), product(x, y));
}

std::vector<StateId> ZhuAlgebra::quotient_basis() const {
  std::vector<StateId> out;
  for (const Exponent& d : algebra().degrees())
    if (d <= D_)
      for (StateId s : algebra().basis(d))
        if (!O_.is_pivot(s)) out.push_back(s);
  return out;
}

Exponent word_degree(const std::vector<ZhuGenerator>& gens, const ZhuAlgebra& Z, const Word& w) {
  Exponent d(0);
  for (int i : w) d += Z.action().degree_of(gens.at(i).vector);
  return d;
}

std::string format_word(const std::vector<ZhuGenerator>& gens, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += "*";
    out += gens[w[i]].name;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

namespace {

struct WordTable {
  std::vector<Word> words;
  std::vector<SparseVec> values;
};

/// All words of degree at most the cutoff, ascending in the word order, with their values.
WordTable evaluate_words(const ZhuAlgebra& Z, const std::vector<ZhuGenerator>& gens) {
  for (const auto& g : gens)
    if (Z.action().degree_of(g.vector) <= Exponent(0)) throw ParameterError("generator " + g.name + " has degree 0");
  std::vector<std::pair<Exponent, Word>> all{{Exponent(0), {}}};
  for (std::size_t k = 0; k < all.size(); ++k)
    for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
      Word w = all[k].second;
      w.push_back(g);
      const Exponent d = word_degree(gens, Z, w);
      if (d <= Z.cutoff()) all.emplace_back(d, std::move(w));
    }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return std::lexicographical_compare(a.second.begin(), a.second.end(), b.second.begin(), b.second.end(),
                                        [](int x, int y) { return x > y; });
  });
  WordTable t;
  std::map<Word, SparseVec> memo;
  const SparseVec vac{{{*Z.algebra().state({}), 1}}};
  memo[{}] = Z.reduce(vac);
  for (auto& [d, w] : all) {
    // a proper suffix has smaller degree, so it was evaluated earlier
    if (!memo.count(w)) memo[w] = Z.product(gens[w.front()].vector, memo.at(Word(w.begin() + 1, w.end())));
    t.values.push_back(memo.at(w));
    t.words.push_back(std::move(w));
  }
  return t;
}

bool contains_subword(const Word& big, const Word& small) {
  if (small.size() > big.size()) return false;
  return std::search(big.begin(), big.end(), small.begin(), small.end()) != big.end();
}

std::string signed_coefficient(const FiniteField& f, Elem c, bool first, const std::string& word) {
  std::string sign = "+";
  Elem mag = c;
  if (f.in_prime_field(c) && c > f.p() / 2) {
    sign = "-";
    mag = f.neg(c);
  }
  std::string body;
  if (word == "1") body = f.format(mag);
  else if (mag == 1) body = word;
  else body = f.format(mag) + "*" + word;
  if (first) return sign == "-" ? "-" + body : body;
  return " " + sign + " " + body;
}

}  // namespace

RelationsReport relations_report(const ZhuAlgebra& Z, const std::vector<ZhuGenerator>& gens) {
  const FiniteField& f = Z.field();
  RelationsReport rep;
  WordTable t = evaluate_words(Z, gens);
  rep.words = t.words.size();
  const std::vector<StateId> qb = Z.quotient_basis();
  rep.quotient_dim = qb.size();
  std::map<StateId, std::size_t> row;
  for (std::size_t i = 0; i < qb.size(); ++i) row[qb[i]] = i;
  Matrix A(f, qb.size(), t.words.size());
  for (std::size_t j = 0; j < t.values.size(); ++j)
    for (const auto& [s, c] : t.values[j].entries) A.at(row.at(s), j) = c;
  rep.image_rank = A.rank();
  rep.spanning = rep.image_rank == rep.quotient_dim;
  if (!rep.spanning) {
    Echelon img(f);
    for (const auto& v : t.values) img.insert(v);
    for (StateId s : qb)
      if (!img.reduce(SparseVec{{{s, 1}}}).empty()) rep.unreached.push_back(Z.algebra().format_state(s));
  }
  const Matrix K = A.kernel();
  Echelon ker(f);
  for (std::size_t c = 0; c < K.cols(); ++c) {
    std::vector<std::pair<std::uint32_t, Elem>> raw;
    for (std::size_t r = 0; r < K.rows(); ++r)
      if (K.at(r, c)) raw.emplace_back(static_cast<std::uint32_t>(r), K.at(r, c));
    ker.insert(make_sparse(f, std::move(raw)));
  }
  ker.make_reduced();
  std::vector<std::uint32_t> leads;
  for (const auto& [p, r] : ker.rows()) leads.push_back(p);
  for (const auto& [p, r] : ker.rows()) {
    bool minimal = true;
    for (std::uint32_t q : leads)
      if (q != p && contains_subword(t.words[p], t.words[q])) minimal = false;
    if (!minimal) continue;
    ZhuRelation rel;
    for (auto it = r.entries.rbegin(); it != r.entries.rend(); ++it) {
      rel.terms.emplace_back(t.words[it->first], it->second);
      rel.text += signed_coefficient(f, it->second, rel.text.empty(), format_word(gens, t.words[it->first]));
    }
    rep.relations.push_back(std::move(rel));
  }
  return rep;
}

CheckResult spanning_check(const ZhuAlgebra& Z, const std::vector<ZhuGenerator>& gens, const std::vector<Word>& words) {
  const FiniteField& f = Z.field();
  const SparseVec vac{{{*Z.algebra().state({}), 1}}};
  Echelon img(f);
  for (const Word& w : words) {
    SparseVec v = Z.reduce(vac);
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = Z.product(gens.at(*it).vector, v);
    img.insert(v);
  }
  std::vector<std::string> missing;
  for (StateId s : Z.quotient_basis())
    if (!img.reduce(SparseVec{{{s, 1}}}).empty()) missing.push_back(Z.algebra().format_state(s));
  if (missing.empty()) return {true, std::to_string(img.rank()) + " classes"};
  std::string d = "unreached:";
  for (const auto& m : missing) d += " [" + m + "]";
  return {false, d};
}

CheckResult shifted_residue_check(const ZhuAlgebra& Z, const SparseVec& u, const SparseVec& v, unsigned m,
                                  unsigned n) {
  SparseVec r = Z.reduce(Z.shifted_circle(u, v, m, n));
  if (r.empty()) return {true, ""};
  return {false, "m = " + std::to_string(m) + ", n = " + std::to_string(n) + " leaves " + Z.format(r)};
}

CheckResult d_congruence_check(const ZhuAlgebra& Z, const SparseVec& u, unsigned n) {
  const FiniteField& f = Z.field();
  const Exponent du = Z.action().degree_of(u);
  SparseVec lhs = d_operator(Z.action(), n, u);
  SparseVec diff = axpy(f, f.neg(f.binom(-du, n)), u, lhs);
  SparseVec r = Z.reduce(diff);
  if (r.empty()) return {true, ""};
  return {false, "n = " + std::to_string(n) + " leaves " + Z.format(r)};
}

CheckResult ideal_check(const ZhuAlgebra& Z, const SparseVec& a, const SparseVec& b, unsigned n, const SparseVec& w) {
  const SparseVec c = Z.circle(a, b, n);
  SparseVec left = Z.reduce(Z.star(w, c));
  SparseVec right = Z.reduce(Z.star(c, w));
  if (left.empty() && right.empty()) return {true, ""};
  return {false, "w * (a o b) = " + Z.format(left) + ", (a o b) * w = " + Z.format(right)};
}

CheckResult associativity_check(const ZhuAlgebra& Z, const SparseVec& x, const SparseVec& y, const SparseVec& z) {
  SparseVec l = Z.product(Z.product(x, y), z);
  SparseVec r = Z.product(x, Z.product(y, z));
  if (l == r) return {true, ""};
  return {false, Z.format(l) + " != " + Z.format(r)};
}

CheckResult vg_zero_bracket_check(const ZhuAlgebra& Z, const SparseVec& a, const SparseVec& b) {
  SparseVec l = Z.bracket(a, b);
  SparseVec r = Z.reduce(Z.commutator_residue(a, b));
  if (l == r) return {true, Z.format(l)};
  return {false, Z.format(l) + " != " + Z.format(r)};
}

}  // namespace modzhu
