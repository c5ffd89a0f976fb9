#include "modzhu/module.hpp"

#include <deque>
#include <sstream>

namespace modzhu {

SparseVec GradedModule::act(const ModeIndex& x, const SparseVec& v) const {
  const FiniteField& f = field();
  SparseAccumulator acc(f);
  for (const auto& [s, c] : v.entries) acc.add(c, act(x, s));
  return acc.take();
}

SparseVec GradedModule::act(const LieElement& x, const SparseVec& v) const {
  const FiniteField& f = field();
  SparseAccumulator acc(f);
  for (const auto& [m, c] : x.modes) acc.add(c, act(m, v));
  for (const auto& [k, c] : x.central) acc.add(f.mul(c, central_value(k)), v);
  return acc.take();
}

std::vector<Exponent> GradedModule::degrees() const {
  std::vector<Exponent> out;
  const Exponent s = step();
  for (Exponent d(0); d <= cutoff(); d += s) out.push_back(d);
  return out;
}

Matrix GradedModule::mode_matrix(const ModeIndex& x, const Exponent& d) const {
  const Exponent target = d + mode_degree(x);
  const auto& src = basis(d);
  if (target < Exponent(0)) return Matrix(field(), 0, src.size());
  const auto& dst = basis(target);
  Matrix m(field(), dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [s, c] : act(x, src[j]).entries) m.at(position(s), j) = c;
  return m;
}

std::vector<ModeIndex> GradedModule::window_modes() const {
  std::vector<ModeIndex> out;
  const Presentation& P = presentation();
  const Exponent C = cutoff();
  for (int g = 0; g < static_cast<int>(P.generators().size()); ++g) {
    const Generator& gen = P.generators()[g];
    // degree offset - M in [-C, C]  <=>  M in [offset - C, offset + C]
    Exponent lo = gen.offset - C;
    Exponent first = gen.lattice + Exponent(floor_exp(lo - gen.lattice));
    if (first < lo) first += 1;
    for (Exponent M = first; M <= gen.offset + C; M += 1) out.push_back({g, M});
  }
  return out;
}

std::vector<ModeIndex> GradedModule::lowering_modes() const {
  std::vector<ModeIndex> out;
  for (const auto& x : window_modes())
    if (mode_degree(x) < Exponent(0)) out.push_back(x);
  return out;
}

std::vector<Elem> GradedModule::coordinates(const SparseVec& v, const Exponent& d) const {
  std::vector<Elem> c(dimension(d), 0);
  for (const auto& [s, a] : v.entries) {
    if (degree_of(s) != d) throw ParameterError("vector is not homogeneous of degree " + format_exponent(d));
    c[position(s)] = a;
  }
  return c;
}

SparseVec GradedModule::from_coordinates(const std::vector<Elem>& c, const Exponent& d) const {
  const auto& b = basis(d);
  std::vector<std::pair<std::uint32_t, Elem>> raw;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i]) raw.emplace_back(b[i], c[i]);
  return make_sparse(field(), std::move(raw));
}

SparseVec GradedModule::column_vector(const Matrix& m, std::size_t j, const Exponent& d) const {
  std::vector<Elem> c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m.at(i, j);
  return from_coordinates(c, d);
}

std::string GradedModule::format(const SparseVec& v) const {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : v.entries) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << field().format(c) << "*";
    os << format_state(s);
  }
  return os.str();
}

std::size_t GradedSubspace::dimension(const Exponent& d) const {
  auto it = rows.find(d);
  return it == rows.end() ? 0 : it->second.rank();
}

namespace {

SparseVec to_positions(const GradedModule& M, const SparseVec& v, const Exponent& d) {
  std::vector<std::pair<std::uint32_t, Elem>> raw;
  raw.reserve(v.size());
  for (const auto& [s, c] : v.entries) {
    if (M.degree_of(s) != d) throw ParameterError("vector is not homogeneous of degree " + format_exponent(d));
    raw.emplace_back(static_cast<std::uint32_t>(M.position(s)), c);
  }
  return make_sparse(M.field(), std::move(raw));
}

SparseVec to_ids(const GradedModule& M, const SparseVec& v, const Exponent& d) {
  const auto& b = M.basis(d);
  std::vector<std::pair<std::uint32_t, Elem>> raw;
  raw.reserve(v.size());
  for (const auto& [i, c] : v.entries) raw.emplace_back(b[i], c);
  return make_sparse(M.field(), std::move(raw));
}

}  // namespace

SparseVec GradedSubspace::reduce(const GradedModule& M, const SparseVec& v, const Exponent& d) const {
  auto it = rows.find(d);
  if (it == rows.end()) return v;
  return to_ids(M, it->second.reduce(to_positions(M, v, d)), d);
}

bool GradedSubspace::insert(const GradedModule& M, const SparseVec& v, const Exponent& d) {
  auto it = rows.find(d);
  if (it == rows.end()) it = rows.emplace(d, Echelon(M.field())).first;
  return it->second.insert(to_positions(M, v, d));
}

bool GradedSubspace::contains(const GradedModule& M, const SparseVec& v, const Exponent& d) const {
  return reduce(M, v, d).empty();
}

std::vector<SparseVec> GradedSubspace::vectors(const GradedModule& M) const {
  std::vector<SparseVec> out;
  for (const auto& [d, ech] : rows)
    for (const auto& [pivot, row] : ech.rows()) out.push_back(to_ids(M, row, d));
  return out;
}

std::map<Exponent, SparseVec> homogeneous_parts(const GradedModule& M, const SparseVec& v) {
  std::map<Exponent, std::vector<std::pair<std::uint32_t, Elem>>> raw;
  for (const auto& [s, c] : v.entries) raw[M.degree_of(s)].emplace_back(s, c);
  std::map<Exponent, SparseVec> out;
  for (auto& [d, r] : raw) out.emplace(d, make_sparse(M.field(), std::move(r)));
  return out;
}

GradedSubspace submodule_closure(const GradedModule& M, const std::vector<SparseVec>& generators) {
  GradedSubspace S;
  std::deque<std::pair<SparseVec, Exponent>> queue;
  for (const auto& g : generators) {
    if (g.empty()) continue;
    auto parts = homogeneous_parts(M, g);
    if (parts.size() != 1) throw ParameterError("submodule generators must be homogeneous");
    const Exponent d = parts.begin()->first;
    if (S.insert(M, g, d)) queue.emplace_back(g, d);
  }
  const std::vector<ModeIndex> modes = M.window_modes();
  while (!queue.empty()) {
    auto [v, d] = queue.front();
    queue.pop_front();
    for (const auto& x : modes) {
      const Exponent t = d + M.mode_degree(x);
      if (t < Exponent(0) || t > M.cutoff()) continue;
      SparseVec w = M.act(x, v);
      if (w.empty()) continue;
      if (S.insert(M, w, t)) queue.emplace_back(std::move(w), t);
    }
  }
  for (auto& [d, e] : S.rows) e.make_reduced();
  return S;
}

QuotientModule::QuotientModule(ModulePtr parent, GradedSubspace sub) : parent_(std::move(parent)), sub_(std::move(sub)) {
  for (auto& [d, e] : sub_.rows) e.make_reduced();
  for (const Exponent& d : parent_->degrees()) {
    const auto& b = parent_->basis(d);
    auto it = sub_.rows.find(d);
    std::vector<StateId> keep;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (it == sub_.rows.end() || !it->second.is_pivot(static_cast<std::uint32_t>(i))) {
        position_[b[i]] = keep.size();
        keep.push_back(b[i]);
      }
    basis_.emplace(d, std::move(keep));
  }
}

const std::vector<StateId>& QuotientModule::basis(const Exponent& d) const {
  auto it = basis_.find(d);
  if (it == basis_.end()) {
    if (d > cutoff()) throw TruncationError("degree " + format_exponent(d) + " exceeds the cutoff");
    static const std::vector<StateId> empty;
    return empty;
  }
  return it->second;
}

std::size_t QuotientModule::position(StateId s) const {
  auto it = position_.find(s);
  if (it == position_.end()) throw ParameterError("state is not a basis vector of the quotient");
  return it->second;
}

SparseVec QuotientModule::reduce(const SparseVec& v) const {
  SparseAccumulator acc(field());
  for (const auto& [d, part] : homogeneous_parts(*parent_, v)) acc.add(1, sub_.reduce(*parent_, part, d));
  return acc.take();
}

SparseVec QuotientModule::act(const ModeIndex& x, StateId s) const { return reduce(parent_->act(x, s)); }

DirectSum::DirectSum(std::vector<ModulePtr> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ParameterError("a direct sum needs at least one part");
  cutoff_ = parts_.front()->cutoff();
  step_ = parts_.front()->step();
  for (const auto& p : parts_) {
    if (!(p->presentation() == parts_.front()->presentation()) || &p->field() != &parts_.front()->field())
      throw ParameterError("direct sum parts must share presentation and field");
    if (p->cutoff() < cutoff_) cutoff_ = p->cutoff();
    Exponent s = p->step();
    step_ = Exponent(1, lcm64(step_.denominator(), s.denominator()));
  }
  global_.resize(parts_.size());
  for (const Exponent& d : degrees()) {
    std::vector<StateId> ids;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (!is_integral(d / parts_[i]->step())) continue;
      for (StateId local : parts_[i]->basis(d)) {
        StateId g = static_cast<StateId>(slots_.size());
        slots_.push_back({i, local, ids.size()});
        global_[i][local] = g;
        ids.push_back(g);
      }
    }
    basis_.emplace(d, std::move(ids));
  }
}

const std::vector<StateId>& DirectSum::basis(const Exponent& d) const {
  auto it = basis_.find(d);
  if (it == basis_.end()) {
    if (d > cutoff_) throw TruncationError("degree " + format_exponent(d) + " exceeds the cutoff");
    static const std::vector<StateId> empty;
    return empty;
  }
  return it->second;
}

Exponent DirectSum::degree_of(StateId s) const {
  const Slot& sl = slots_.at(s);
  return parts_[sl.part]->degree_of(sl.local);
}

int DirectSum::parity_of(StateId s) const {
  const Slot& sl = slots_.at(s);
  return parts_[sl.part]->parity_of(sl.local);
}

SparseVec DirectSum::embed(std::size_t i, const SparseVec& v) const {
  std::vector<std::pair<std::uint32_t, Elem>> raw;
  for (const auto& [s, c] : v.entries) raw.emplace_back(global_[i].at(s), c);
  return make_sparse(field(), std::move(raw));
}

SparseVec DirectSum::act(const ModeIndex& x, StateId s) const {
  const Slot& sl = slots_.at(s);
  if (degree_of(s) + mode_degree(x) > cutoff_)
    throw TruncationError("degree exceeds the cutoff of the direct sum");
  return embed(sl.part, parts_[sl.part]->act(x, sl.local));
}

std::string DirectSum::format_state(StateId s) const {
  const Slot& sl = slots_.at(s);
  return "(" + std::to_string(sl.part) + ")" + parts_[sl.part]->format_state(sl.local);
}

BasisChange::BasisChange(ModulePtr parent, std::uint64_t seed) : parent_(std::move(parent)) {
  std::mt19937_64 rng(seed);
  const FiniteField& f = parent_->field();
  for (const Exponent& d : parent_->degrees()) {
    const auto& b = parent_->basis(d);
    const std::size_t n = b.size();
    Matrix P = Matrix::identity(f, n);
    for (int par = 0; par < 2; ++par) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n; ++i)
        if (parent_->parity_of(b[i]) == par) idx.push_back(i);
      Matrix block = Matrix::random_invertible(f, idx.size(), rng);
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) P.at(idx[i], idx[j]) = block.at(i, j);
    }
    inverse_.emplace(d, P.inverse());
    change_.emplace(d, std::move(P));
  }
}

SparseVec BasisChange::act(const ModeIndex& x, StateId s) const {
  const Exponent d = parent_->degree_of(s);
  const Exponent t = d + mode_degree(x);
  if (t < Exponent(0)) return {};
  const Matrix& P = change_.at(d);
  const auto& b = parent_->basis(d);
  const std::size_t j = parent_->position(s);
  SparseAccumulator acc(field());
  for (std::size_t i = 0; i < b.size(); ++i)
    if (Elem c = P.at(i, j)) acc.add(c, parent_->act(x, b[i]));
  std::vector<Elem> old = parent_->coordinates(acc.take(), t);
  const Matrix& Q = inverse_.at(t);
  std::vector<Elem> fresh(old.size(), 0);
  const FiniteField& f = field();
  for (std::size_t r = 0; r < old.size(); ++r)
    for (std::size_t c = 0; c < old.size(); ++c)
      if (old[c]) fresh[r] = f.add(fresh[r], f.mul(Q.at(r, c), old[c]));
  return parent_->from_coordinates(fresh, t);
}

}  // namespace modzhu
