#include "modzhu/pbw.hpp"

#include <algorithm>

namespace modzhu {

InducedModule::InducedModule(InducedModuleData data) : data_(std::move(data)) {
  const Presentation& P = data_.presentation;
  if (data_.creation_bound.size() != P.generators().size())
    throw ParameterError("one creation bound per generator is required");
  if (data_.central_values.size() != P.centrals().size())
    throw ParameterError("one value per central element is required");
  if (data_.bottom_parity.empty()) data_.bottom_parity.assign(data_.bottom_dim, 0);
  if (data_.bottom_parity.size() != data_.bottom_dim) throw ParameterError("bottom parity has the wrong length");
  for (const auto& [g, m] : data_.bottom_action)
    if (m.rows() != data_.bottom_dim || m.cols() != data_.bottom_dim)
      throw ParameterError("bottom action of " + P.generators().at(g).name + " has the wrong size");
  if (data_.cutoff < Exponent(0)) throw ParameterError("cutoff must be nonnegative");
  enumerate();
}

std::shared_ptr<InducedModule> InducedModule::vacuum(const Presentation& P, std::vector<Elem> central_values,
                                                     const Exponent& cutoff) {
  InducedModuleData d{P, {}, std::move(central_values), 1, {}, {}, cutoff};
  for (const Generator& g : P.generators()) d.creation_bound.push_back(g.offset - g.weight + 1);
  return std::make_shared<InducedModule>(std::move(d));
}

std::shared_ptr<InducedModule> InducedModule::verma(const Presentation& P, std::vector<Elem> central_values,
                                                    std::size_t bottom_dim, std::map<int, Matrix> bottom_action,
                                                    const Exponent& cutoff, std::vector<int> bottom_parity) {
  InducedModuleData d{P, {}, std::move(central_values), bottom_dim, std::move(bottom_parity),
                      std::move(bottom_action), cutoff};
  for (const Generator& g : P.generators()) d.creation_bound.push_back(g.offset);
  return std::make_shared<InducedModule>(std::move(d));
}

bool InducedModule::key_less(const ModeIndex& a, const ModeIndex& b) const {
  const auto& gens = data_.presentation.generators();
  const Exponent ka = a.mode - gens[a.gen].offset, kb = b.mode - gens[b.gen].offset;
  if (ka != kb) return ka < kb;
  return a.gen < b.gen;
}

void InducedModule::enumerate() {
  const Presentation& P = data_.presentation;
  const Exponent C = data_.cutoff;
  std::int64_t den = 1;
  for (std::size_t g = 0; g < P.generators().size(); ++g) {
    const Generator& gen = P.generators()[g];
    den = lcm64(den, (gen.offset - gen.lattice).denominator());
    // creation modes M < bound with degree offset - M <= C
    Exponent lo = gen.offset - C;
    Exponent M = gen.lattice + Exponent(floor_exp(lo - gen.lattice));
    if (M < lo) M += 1;
    for (; M < data_.creation_bound[g]; M += 1) {
      if (gen.offset - M <= Exponent(0))
        throw PresentationError("creation mode " + P.format_mode({static_cast<int>(g), M}) + " has degree <= 0");
      creation_.push_back({static_cast<int>(g), M});
    }
  }
  step_ = Exponent(1, den);
  std::sort(creation_.begin(), creation_.end(), [this](const auto& a, const auto& b) { return key_less(a, b); });

  std::vector<std::pair<std::vector<ModeIndex>, Exponent>> monomials;
  std::vector<ModeIndex> cur;
  auto rec = [&](auto&& self, std::size_t start, const Exponent& deg) -> void {
    monomials.emplace_back(cur, deg);
    for (std::size_t i = start; i < creation_.size(); ++i) {
      const ModeIndex& x = creation_[i];
      const Exponent nd = deg + P.degree(x);
      if (nd > C) continue;
      cur.push_back(x);
      self(self, P.parity(x.gen) ? i + 1 : i, nd);
      cur.pop_back();
    }
  };
  rec(rec, 0, Exponent(0));

  std::map<Exponent, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < monomials.size(); ++i) by_degree[monomials[i].second].push_back(i);
  for (Exponent d(0); d <= C; d += step_) {
    auto& idx = by_degree[d];
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const auto& fa = monomials[a].first;
      const auto& fb = monomials[b].first;
      if (fa.size() != fb.size()) return fa.size() > fb.size();
      for (std::size_t k = 0; k < fa.size(); ++k) {
        if (key_less(fa[k], fb[k])) return false;
        if (key_less(fb[k], fa[k])) return true;
      }
      return false;
    });
    first_id_[d] = static_cast<StateId>(states_.size());
    auto& ids = basis_[d];
    for (std::size_t i : idx)
      for (std::size_t b = 0; b < data_.bottom_dim; ++b) {
        State st{monomials[i].first, b, d, data_.bottom_parity[b]};
        for (const auto& x : st.factors) st.parity ^= P.parity(x.gen);
        const StateId id = static_cast<StateId>(states_.size());
        index_.emplace(std::make_pair(st.factors, b), id);
        states_.push_back(std::move(st));
        ids.push_back(id);
      }
  }
  if (by_degree.size() != basis_.size()) throw PresentationError("monomial degrees are not multiples of the step");
}

const std::vector<StateId>& InducedModule::basis(const Exponent& d) const {
  auto it = basis_.find(d);
  if (it == basis_.end()) {
    if (d > data_.cutoff) throw TruncationError("degree " + format_exponent(d) + " exceeds the cutoff");
    static const std::vector<StateId> empty;
    return empty;
  }
  return it->second;
}

std::optional<StateId> InducedModule::state(const std::vector<ModeIndex>& factors, std::size_t b) const {
  auto it = index_.find(std::make_pair(factors, b));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string InducedModule::format_state(StateId s) const {
  const State& st = states_.at(s);
  std::string out;
  for (const auto& x : st.factors) out += data_.presentation.format_mode(x) + " ";
  if (data_.bottom_dim == 1 && data_.bottom_action.empty()) return out + "1";
  return out + "u" + std::to_string(st.bottom);
}

SparseVec InducedModule::act(const ModeIndex& x, StateId s) const {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  const Key key{x.gen, x.mode.numerator(), x.mode.denominator(), s};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  SparseVec v = compute(x, s);
  memo_.emplace(key, v);
  return v;
}

SparseVec InducedModule::act_lie(const LieElement& x, StateId s) const {
  const FiniteField& f = field();
  SparseAccumulator acc(f);
  for (const auto& [m, c] : x.modes) acc.add(c, act(m, s));
  for (const auto& [k, c] : x.central) acc.add(s, f.mul(c, central_value(k)));
  return acc.take();
}

SparseVec InducedModule::compute(const ModeIndex& x, StateId s) const {
  const Presentation& P = data_.presentation;
  const FiniteField& f = field();
  P.require_lattice(x);
  const State& st = states_.at(s);
  const Exponent target = st.degree + P.degree(x);
  if (target < Exponent(0)) return {};
  if (target > data_.cutoff)
    throw TruncationError(P.format_mode(x) + " on " + format_state(s) + " exceeds the cutoff " +
                          format_exponent(data_.cutoff));
  const bool creation = is_creation(x);
  if (st.factors.empty()) {
    if (creation) return SparseVec{{{*state({x}, st.bottom), 1}}};
    auto it = data_.bottom_action.find(x.gen);
    if (P.degree(x) != Exponent(0) || it == data_.bottom_action.end()) return {};
    std::vector<std::pair<std::uint32_t, Elem>> raw;
    for (std::size_t i = 0; i < data_.bottom_dim; ++i)
      if (Elem c = it->second.at(i, st.bottom)) raw.emplace_back(*state({}, i), c);
    return make_sparse(f, std::move(raw));
  }
  const ModeIndex& f1 = st.factors.front();
  if (creation && !key_less(f1, x)) {
    if (x == f1 && P.parity(x.gen)) {
      std::vector<ModeIndex> rest(st.factors.begin() + 1, st.factors.end());
      return scale(f, f.inv(2), act_lie(P.bracket(x, x), *state(rest, st.bottom)));
    }
    std::vector<ModeIndex> longer;
    longer.reserve(st.factors.size() + 1);
    longer.push_back(x);
    longer.insert(longer.end(), st.factors.begin(), st.factors.end());
    return SparseVec{{{*state(longer, st.bottom), 1}}};
  }
  std::vector<ModeIndex> rest_factors(st.factors.begin() + 1, st.factors.end());
  const StateId rest = *state(rest_factors, st.bottom);
  const Elem sign = (P.parity(x.gen) && P.parity(f1.gen)) ? f.neg(1) : 1;
  SparseAccumulator acc(f);
  acc.add(sign, GradedModule::act(f1, act(x, rest)));
  acc.add(1, act_lie(P.bracket(x, f1), rest));
  return acc.take();
}

SparseVec InducedModule::straighten(const std::vector<ModeIndex>& word, const SparseVec& v) const {
  SparseVec out = v;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = GradedModule::act(*it, out);
  return out;
}

std::shared_ptr<QuotientModule> quotient_by_ideal(ModulePtr M, const std::vector<SparseVec>& generators) {
  GradedSubspace sub = submodule_closure(*M, generators);
  return std::make_shared<QuotientModule>(std::move(M), std::move(sub));
}

}  // namespace modzhu
