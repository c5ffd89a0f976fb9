#include "modzhu/vertex.hpp"

#include <sstream>

namespace modzhu {

VertexAction::VertexAction(std::shared_ptr<const InducedModule> V, ModulePtr W, std::vector<int> gen_map)
    : V_(std::move(V)), W_(std::move(W)), gen_map_(std::move(gen_map)) {
  const auto& vg = V_->presentation().generators();
  const auto& wg = W_->presentation().generators();
  if (gen_map_.size() != vg.size()) throw ParameterError("gen_map needs one entry per generator of V");
  if (&V_->field() != &W_->field()) throw ParameterError("V and W must share the field");
  for (std::size_t i = 0; i < vg.size(); ++i) {
    const int g = gen_map_[i];
    if (g < 0 || g >= static_cast<int>(wg.size())) throw ParameterError("gen_map entry out of range");
    if (wg[g].weight != vg[i].weight || wg[g].parity != vg[i].parity)
      throw ParameterError("generator " + vg[i].name + " and its image " + wg[g].name + " differ in weight or parity");
    twist_.push_back(frac_exp(wg[g].twist));
  }
}

std::shared_ptr<VertexAction> VertexAction::on_self(std::shared_ptr<const InducedModule> V) {
  std::vector<int> ids(V->presentation().generators().size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  ModulePtr W = V;
  return std::make_shared<VertexAction>(std::move(V), std::move(W), std::move(ids));
}

SparseVec VertexAction::generator_state(int i) const {
  const Generator& g = V_->presentation().generators().at(i);
  auto s = V_->state({{i, g.state_mode()}});
  if (!s) throw TruncationError("the state of " + g.name + " lies above the cutoff");
  return SparseVec{{{*s, 1}}};
}

Exponent VertexAction::twist_of(StateId u) const {
  Exponent t(0);
  for (const auto& x : V_->factors(u)) t += twist_[x.gen];
  return frac_exp(t);
}

Exponent VertexAction::twist_of(const SparseVec& u) const {
  if (u.empty()) return Exponent(0);
  const Exponent t = twist_of(u.entries.front().first);
  for (const auto& [s, c] : u.entries)
    if (twist_of(s) != t) throw ParameterError("vector is not homogeneous for the twist");
  return t;
}

int VertexAction::parity_of(const SparseVec& u) const {
  if (u.empty()) return 0;
  const int p = V_->parity_of(u.entries.front().first);
  for (const auto& [s, c] : u.entries)
    if (V_->parity_of(s) != p) throw ParameterError("vector is not homogeneous for the parity");
  return p;
}

Exponent VertexAction::degree_of(const SparseVec& u) const {
  if (u.empty()) return Exponent(0);
  const Exponent d = V_->degree_of(u.entries.front().first);
  for (const auto& [s, c] : u.entries)
    if (V_->degree_of(s) != d) throw ParameterError("vector is not homogeneous for the degree");
  return d;
}

Exponent VertexAction::vertex_index(const ModeIndex& factor) const {
  const Generator& g = V_->presentation().generators().at(factor.gen);
  return factor.mode - (1 + g.offset - g.weight);
}

SparseVec VertexAction::generator_mode(int i, const Exponent& n, const SparseVec& w) const {
  const int g = gen_map_.at(i);
  const Generator& wg = W_->presentation().generators()[g];
  return W_->act(ModeIndex{g, n + 1 + wg.offset - wg.weight}, w);
}

SparseVec VertexAction::mode_act(StateId u, const Exponent& n, StateId w) const {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  const auto key = std::make_tuple(u, n.numerator(), n.denominator(), w);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  SparseVec r = compute(u, n, w);
  memo_.emplace(key, r);
  return r;
}

SparseVec VertexAction::act_states(StateId u, const Exponent& n, const SparseVec& w) const {
  SparseAccumulator acc(field());
  for (const auto& [s, c] : w.entries) acc.add(c, mode_act(u, n, s));
  return acc.take();
}

SparseVec VertexAction::mode_act(const SparseVec& u, const Exponent& n, const SparseVec& w) const {
  SparseAccumulator acc(field());
  for (const auto& [s, c] : u.entries) {
    if (!is_integral(n - twist_of(s)))
      throw PresentationError("mode index " + format_exponent(n) + " is off the coset " +
                              format_exponent(twist_of(s)) + " + Z");
    acc.add(c, act_states(s, n, w));
  }
  return acc.take();
}

SparseVec VertexAction::compute(StateId u, const Exponent& n, StateId w) const {
  const FiniteField& f = field();
  const Exponent deg_u = V_->degree_of(u), deg_w = W_->degree_of(w);
  const Exponent target = deg_u + deg_w - n - 1;
  if (target < Exponent(0)) return {};
  if (target > W_->cutoff())
    throw TruncationError("mode " + format_exponent(n) + " of " + V_->format_state(u) + " on " +
                          W_->format_state(w) + " exceeds the cutoff");
  const auto& factors = V_->factors(u);
  if (factors.empty()) return n == Exponent(-1) ? SparseVec{{{w, 1}}} : SparseVec{};

  const ModeIndex& first = factors.front();
  const int a = first.gen;
  const Exponent m = vertex_index(first);
  const SparseVec w_vec{{{w, 1}}};
  if (factors.size() == 1) {
    // (D^(k) a)_n = (-1)^k binom(n, k) a_{n-k} with k = -m - 1
    const std::int64_t k = -floor_exp(m) - 1;
    Elem c = f.binom(n, static_cast<unsigned>(k));
    if (k % 2) c = f.neg(c);
    if (!c) return {};
    return scale(f, c, generator_mode(a, n - Exponent(k), w_vec));
  }

  const std::vector<ModeIndex> rest(factors.begin() + 1, factors.end());
  const StateId v = *V_->state(rest);
  const Exponent alpha = twist_[a];
  const Exponent deg_a = V_->presentation().generators()[a].weight;
  const Exponent deg_v = V_->degree_of(v);
  const Exponent deg_a_w = W_->presentation().generators()[gen_map_[a]].weight;
  const bool odd_pair = V_->presentation().parity(a) && V_->parity_of(v);
  const std::int64_t mi = floor_exp(m);

  SparseAccumulator acc(f);
  const std::int64_t L = floor_exp(deg_a + deg_v - 1 - m);
  for (std::int64_t l = 0; l <= L; ++l) {
    const Elem cl = f.binom(-alpha, static_cast<unsigned>(l));
    if (!cl) continue;
    const Exponent top = m + Exponent(l);
    // a_{alpha+m+l-j} v_{n-alpha-l+j} w
    const std::int64_t J1 = floor_exp(deg_v + deg_w - 1 - n + alpha + Exponent(l));
    for (std::int64_t j = 0; j <= J1; ++j) {
      Elem c = f.mul(cl, f.binom(top, static_cast<unsigned>(j)));
      if (!c) continue;
      if (j % 2) c = f.neg(c);
      SparseVec x = act_states(v, n - alpha - Exponent(l) + Exponent(j), w_vec);
      if (x.empty()) continue;
      acc.add(c, generator_mode(a, alpha + top - Exponent(j), x));
    }
    // -eps (-1)^{m+l} v_{n-alpha+m-j} a_{alpha+j} w
    const std::int64_t J2 = floor_exp(deg_a_w + deg_w - 1 - alpha);
    for (std::int64_t j = 0; j <= J2; ++j) {
      Elem c = f.mul(cl, f.binom(top, static_cast<unsigned>(j)));
      if (!c) continue;
      bool minus = !odd_pair;
      if ((j + mi + l) % 2 != 0) minus = !minus;
      if (minus) c = f.neg(c);
      SparseVec y = generator_mode(a, alpha + Exponent(j), w_vec);
      if (y.empty()) continue;
      acc.add(c, act_states(v, n - alpha + m - Exponent(j), y));
    }
  }
  return acc.take();
}

SparseVec d_operator(const VertexAction& self, unsigned k, const SparseVec& v) {
  const SparseVec vac{{{*self.algebra().state({}), 1}}};
  return self.mode_act(v, Exponent(-static_cast<std::int64_t>(k) - 1), vac);
}

namespace {

/// Lattice points t + Z inside [-range, range].
std::vector<Exponent> window(const Exponent& t, int range) {
  std::vector<Exponent> out;
  for (Exponent x = t - Exponent(range + 1); x <= Exponent(range); x += 1)
    if (x >= Exponent(-range)) out.push_back(x);
  return out;
}

std::vector<StateId> all_states(const GradedModule& W) {
  std::vector<StateId> out;
  for (const Exponent& d : W.degrees())
    for (StateId s : W.basis(d)) out.push_back(s);
  return out;
}

/// [u_m, v_n] w, or nothing when the computation leaves the cutoff.
std::optional<SparseVec> commutator(const VertexAction& A, const SparseVec& u, const SparseVec& v, bool odd_pair,
                                    const Exponent& m, const Exponent& n, StateId w) {
  const FiniteField& f = A.field();
  const SparseVec wv{{{w, 1}}};
  try {
    SparseVec a = A.mode_act(u, m, A.mode_act(v, n, wv));
    SparseVec b = A.mode_act(v, n, A.mode_act(u, m, wv));
    return axpy(f, odd_pair ? 1 : f.neg(1), b, a);
  } catch (const TruncationError&) {
    return std::nullopt;
  }
}

std::string describe(const VertexAction& A, const Exponent& m, const Exponent& n, StateId w, const SparseVec& lhs,
                     const SparseVec& rhs) {
  std::ostringstream os;
  os << "m = " << format_exponent(m) << ", n = " << format_exponent(n) << ", w = " << A.module().format_state(w)
     << ": " << A.module().format(lhs) << " != " << A.module().format(rhs);
  return os.str();
}

}  // namespace

LocalityResult locality_order(const VertexAction& A, const SparseVec& u, const SparseVec& v, int mode_range,
                              unsigned k_max) {
  const FiniteField& f = A.field();
  const Exponent tu = A.twist_of(u), tv = A.twist_of(v);
  const bool odd_pair = A.parity_of(u) && A.parity_of(v);
  const std::vector<StateId> states = all_states(A.module());
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, StateId>, std::optional<SparseVec>> cache;
  auto comm = [&](const Exponent& m, const Exponent& n, StateId w) -> const std::optional<SparseVec>& {
    auto key = std::make_tuple(m.numerator(), m.denominator(), n.numerator(), n.denominator(), w);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, commutator(A, u, v, odd_pair, m, n, w)).first;
    return it->second;
  };
  LocalityResult res;
  for (unsigned k = 0; k <= k_max; ++k) {
    bool zero = true;
    std::string witness;
    for (const Exponent& m : window(tu, mode_range)) {
      for (const Exponent& n : window(tv, mode_range)) {
        for (StateId w : states) {
          SparseAccumulator acc(f);
          bool known = true;
          for (unsigned i = 0; i <= k && known; ++i) {
            const auto& c = comm(m + Exponent(k - i), n + Exponent(i), w);
            if (!c) {
              known = false;
              break;
            }
            Elem b = f.binom(Exponent(k), i);
            if (i % 2) b = f.neg(b);
            acc.add(b, *c);
          }
          if (!known) continue;
          SparseVec total = acc.take();
          if (!total.empty()) {
            zero = false;
            witness = describe(A, m, n, w, total, {});
            break;
          }
        }
        if (!zero) break;
      }
      if (!zero) break;
    }
    if (zero) {
      res.found = true;
      res.order = k;
      return res;
    }
    res.detail = "k = " + std::to_string(k) + " fails at " + witness;
  }
  return res;
}

CheckResult commutator_formula_check(const VertexAction& self, const VertexAction& A, const SparseVec& u,
                                     const SparseVec& v, int mode_range) {
  const FiniteField& f = A.field();
  const Exponent tu = A.twist_of(u), tv = A.twist_of(v);
  const bool odd_pair = A.parity_of(u) && A.parity_of(v);
  const std::int64_t top = floor_exp(self.degree_of(u) + self.degree_of(v) - 1);
  std::vector<SparseVec> products;
  for (std::int64_t i = 0; i <= top; ++i) products.push_back(self.mode_act(u, Exponent(i), v));
  std::size_t checked = 0;
  for (const Exponent& m : window(tu, mode_range))
    for (const Exponent& n : window(tv, mode_range))
      for (StateId w : all_states(A.module())) {
        auto lhs = commutator(A, u, v, odd_pair, m, n, w);
        if (!lhs) continue;
        SparseAccumulator acc(f);
        const SparseVec wv{{{w, 1}}};
        try {
          for (std::size_t i = 0; i < products.size(); ++i) {
            const Elem b = f.binom(m, static_cast<unsigned>(i));
            if (b && !products[i].empty())
              acc.add(b, A.mode_act(products[i], m + n - Exponent(static_cast<std::int64_t>(i)), wv));
          }
        } catch (const TruncationError&) {
          continue;
        }
        SparseVec rhs = acc.take();
        ++checked;
        if (!(*lhs == rhs)) return {false, describe(A, m, n, w, *lhs, rhs)};
      }
  if (checked == 0) return {false, "no coefficient fits inside the cutoff"};
  return {true, std::to_string(checked) + " coefficients"};
}

CheckResult skew_symmetry_check(const VertexAction& self, const SparseVec& u, const SparseVec& v, int depth) {
  const FiniteField& f = self.field();
  const Exponent du = self.degree_of(u), dv = self.degree_of(v);
  const bool odd_pair = self.parity_of(u) && self.parity_of(v);
  const Exponent cutoff = self.algebra().cutoff();
  std::size_t checked = 0;
  for (std::int64_t n = -depth; n <= floor_exp(du + dv - 1); ++n) {
    if (du + dv - Exponent(n) - 1 > cutoff) continue;
    const SparseVec vac{{{*self.algebra().state({}), 1}}};
    SparseVec lhs = self.mode_act(u, Exponent(n), v);
    SparseAccumulator acc(f);
    for (std::int64_t k = 0; du + dv - Exponent(n + k) - 1 >= Exponent(0); ++k) {
      SparseVec inner = self.mode_act(v, Exponent(n + k), u);
      Elem c = ((n + k + 1) % 2 == 0) ? 1 : f.neg(1);
      if (odd_pair) c = f.neg(c);
      acc.add(c, d_operator(self, static_cast<unsigned>(k), inner));
    }
    SparseVec rhs = acc.take();
    ++checked;
    if (!(lhs == rhs))
      return {false, "n = " + std::to_string(n) + ": " + self.algebra().format(lhs) + " != " + self.algebra().format(rhs)};
  }
  if (checked == 0) return {false, "no coefficient fits inside the cutoff"};
  return {true, std::to_string(checked) + " coefficients"};
}

CheckResult creation_check(const VertexAction& self, const SparseVec& v) {
  const SparseVec vac{{{*self.algebra().state({}), 1}}};
  const Exponent d = self.degree_of(v);
  for (std::int64_t n = 0; Exponent(n) <= d; ++n)
    if (!self.mode_act(v, Exponent(n), vac).empty()) return {false, "v_" + std::to_string(n) + " 1 is nonzero"};
  if (!(self.mode_act(v, Exponent(-1), vac) == v)) return {false, "v_{-1} 1 differs from v"};
  return {true, ""};
}

}  // namespace modzhu
