#include "modzhu/lie.hpp"

#include <sstream>

namespace modzhu {

namespace {

Elem sign_elem(const FiniteField& f, int parity_product) { return parity_product ? f.neg(1) : 1; }

}  // namespace

Exponent to_exponent(const DScalar& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  const BigInt limit = BigInt(1) << 62;
  if (abs(num) >= limit || den >= limit) throw PresentationError("mode value out of range: " + format_dscalar(x));
  return Exponent(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

void LieElement::add(const FiniteField& f, const ModeIndex& x, Elem c) {
  if (c == 0) return;
  auto it = modes.find(x);
  if (it == modes.end()) {
    modes.emplace(x, c);
    return;
  }
  it->second = f.add(it->second, c);
  if (it->second == 0) modes.erase(it);
}

void LieElement::add_central(const FiniteField& f, int k, Elem c) {
  if (c == 0) return;
  auto it = central.find(k);
  if (it == central.end()) {
    central.emplace(k, c);
    return;
  }
  it->second = f.add(it->second, c);
  if (it->second == 0) central.erase(it);
}

void LieElement::add(const FiniteField& f, const LieElement& o, Elem c) {
  if (c == 0) return;
  for (const auto& [x, v] : o.modes) add(f, x, f.mul(c, v));
  for (const auto& [k, v] : o.central) add_central(f, k, f.mul(c, v));
}

LieElement lie_mode(const ModeIndex& x) {
  LieElement e;
  e.modes.emplace(x, 1);
  return e;
}

Presentation::Presentation(const Presentation& o)
    : name_(o.name_), field_(o.field_), gens_(o.gens_), centrals_(o.centrals_), rules_(o.rules_) {}

Presentation& Presentation::operator=(const Presentation& o) {
  if (this == &o) return *this;
  name_ = o.name_;
  field_ = o.field_;
  gens_ = o.gens_;
  centrals_ = o.centrals_;
  rules_ = o.rules_;
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.clear();
  return *this;
}

int Presentation::add_generator(Generator g) {
  if (find_generator(g.name) || find_central(g.name))
    throw PresentationError("duplicate symbol '" + g.name + "'");
  if (g.parity != 0 && g.parity != 1) throw PresentationError("parity must be 0 or 1");
  gens_.push_back(std::move(g));
  return static_cast<int>(gens_.size()) - 1;
}

int Presentation::add_central(std::string name) {
  if (find_generator(name) || find_central(name)) throw PresentationError("duplicate symbol '" + name + "'");
  centrals_.push_back(std::move(name));
  return static_cast<int>(centrals_.size()) - 1;
}

void Presentation::set_bracket(BracketRule rule) {
  if (rule.first > rule.second) throw PresentationError("bracket rules are stored with first <= second");
  const int ng = static_cast<int>(gens_.size());
  if (rule.first < 0 || rule.second >= ng) throw PresentationError("bracket rule refers to unknown generator");
  for (const auto& t : rule.gen_terms)
    if (t.target < 0 || t.target >= ng || !t.coef || !t.mode)
      throw PresentationError("malformed bracket term");
  for (const auto& t : rule.central_terms)
    if (t.central < 0 || t.central >= static_cast<int>(centrals_.size()) || !t.coef)
      throw PresentationError("malformed central term");
  rules_[{rule.first, rule.second}] = std::move(rule);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.clear();
}

std::optional<int> Presentation::find_generator(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Presentation::find_central(const std::string& name) const {
  for (std::size_t i = 0; i < centrals_.size(); ++i)
    if (centrals_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

bool Presentation::on_lattice(const ModeIndex& x) const {
  if (x.gen < 0 || x.gen >= static_cast<int>(gens_.size())) return false;
  return is_integral(x.mode - gens_[x.gen].lattice);
}

void Presentation::require_lattice(const ModeIndex& x) const {
  if (x.gen < 0 || x.gen >= static_cast<int>(gens_.size()))
    throw PresentationError("unknown generator index " + std::to_string(x.gen));
  if (!on_lattice(x))
    throw PresentationError("mode " + format_exponent(x.mode) + " is off the lattice " +
                            format_exponent(gens_[x.gen].lattice) + " + Z of " + gens_[x.gen].name);
}

LieElement Presentation::evaluate_rule(const BracketRule& r, const ModeIndex& a, const ModeIndex& b) const {
  const FiniteField& f = *field_;
  const DScalar m = to_dscalar(a.mode), n = to_dscalar(b.mode);
  LieElement out;
  for (const auto& t : r.gen_terms) {
    Elem c = f.mul(t.scale, f.reduce(t.coef->eval(m, n)));
    if (c == 0) continue;
    ModeIndex target{t.target, to_exponent(t.mode->eval(m, n))};
    require_lattice(target);
    out.add(f, target, c);
  }
  for (const auto& t : r.central_terms) out.add_central(f, t.central, f.mul(t.scale, f.reduce(t.coef->eval(m, n))));
  return out;
}

const LieElement& Presentation::bracket(const ModeIndex& x, const ModeIndex& y) const {
  auto key = std::make_tuple(x.gen, x.mode.numerator(), x.mode.denominator(), y.gen, y.mode.numerator(),
                             y.mode.denominator());
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  require_lattice(x);
  require_lattice(y);
  LieElement value;
  if (x.gen <= y.gen) {
    auto it = rules_.find({x.gen, y.gen});
    if (it != rules_.end()) value = evaluate_rule(it->second, x, y);
  } else {
    auto it = rules_.find({y.gen, x.gen});
    if (it != rules_.end()) {
      LieElement rev = evaluate_rule(it->second, y, x);
      const FiniteField& f = *field_;
      Elem s = f.neg(sign_elem(f, parity(x.gen) * parity(y.gen)));
      value.add(f, rev, s);
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.emplace(key, std::move(value)).first->second;
}

LieElement Presentation::bracket(const LieElement& x, const LieElement& y) const {
  const FiniteField& f = *field_;
  LieElement out;
  for (const auto& [a, ca] : x.modes)
    for (const auto& [b, cb] : y.modes) out.add(f, bracket(a, b), f.mul(ca, cb));
  return out;
}

void Presentation::validate(int sample_range) const {
  if (!field_) throw PresentationError("presentation has no field");
  const unsigned p = field_->p();
  for (const auto& g : gens_) {
    if (!is_integral(g.lattice - g.twist - g.state_mode() - 1))
      throw PresentationError("generator " + g.name + ": lattice " + format_exponent(g.lattice) +
                              " is inconsistent with twist " + format_exponent(g.twist));
    for (const Exponent& e : {g.weight, g.offset, g.lattice, g.twist})
      if (e.denominator() % p == 0)
        throw PresentationError("generator " + g.name + ": denominator divisible by p");
  }
  auto check_literals = [&](const ExprPtr& e) {
    e->for_each_literal([&](const Expr& lit) {
      if (boost::multiprecision::denominator(lit.value()) % p == 0)
        throw PresentationError("literal " + format_dscalar(lit.value()) + " has denominator divisible by p");
    });
  };
  for (const auto& [key, r] : rules_) {
    for (const auto& t : r.gen_terms) {
      check_literals(t.coef);
      check_literals(t.mode);
    }
    for (const auto& t : r.central_terms) check_literals(t.coef);
  }
  const FiniteField& f = *field_;
  for (const auto& [key, r] : rules_) {
    const Generator& gi = gens_[r.first];
    const Generator& gj = gens_[r.second];
    for (int a = -sample_range; a <= sample_range; ++a)
      for (int b = -sample_range; b <= sample_range; ++b) {
        ModeIndex x{r.first, gi.lattice + a}, y{r.second, gj.lattice + b};
        LieElement v = evaluate_rule(r, x, y);
        Exponent d = degree(x) + degree(y);
        for (const auto& [z, c] : v.modes)
          if (degree(z) != d)
            throw PresentationError("degree additivity fails for [" + format_mode(x) + ", " + format_mode(y) + "]");
        if (!v.central.empty() && d != Exponent(0))
          throw PresentationError("central term in nonzero degree for [" + format_mode(x) + ", " + format_mode(y) +
                                  "]");
        if (r.first == r.second) {
          LieElement w = evaluate_rule(r, y, x);
          LieElement sum = v;
          sum.add(f, w, sign_elem(f, gi.parity * gj.parity));
          if (!sum.is_zero())
            throw PresentationError("super skew symmetry fails for [" + format_mode(x) + ", " + format_mode(y) + "]");
        }
      }
  }
}

bool Presentation::operator==(const Presentation& o) const {
  if (name_ != o.name_ || field_ != o.field_ || gens_ != o.gens_ || centrals_ != o.centrals_) return false;
  if (rules_.size() != o.rules_.size()) return false;
  for (const auto& [key, r] : rules_) {
    auto it = o.rules_.find(key);
    if (it == o.rules_.end()) return false;
    const BracketRule& s = it->second;
    if (r.gen_terms.size() != s.gen_terms.size() || r.central_terms.size() != s.central_terms.size()) return false;
    for (std::size_t i = 0; i < r.gen_terms.size(); ++i) {
      const auto &a = r.gen_terms[i], &b = s.gen_terms[i];
      if (a.scale != b.scale || a.target != b.target || !expr_equal(a.coef, b.coef) || !expr_equal(a.mode, b.mode))
        return false;
    }
    for (std::size_t i = 0; i < r.central_terms.size(); ++i) {
      const auto &a = r.central_terms[i], &b = s.central_terms[i];
      if (a.scale != b.scale || a.central != b.central || !expr_equal(a.coef, b.coef)) return false;
    }
  }
  return true;
}

std::string Presentation::format_mode(const ModeIndex& x) const {
  return gens_[x.gen].name + "[" + format_exponent(x.mode) + "]";
}

std::string Presentation::format(const LieElement& x) const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](Elem c, const std::string& sym) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << field_->format(c) << "*";
    os << sym;
  };
  for (const auto& [m, c] : x.modes) emit(c, format_mode(m));
  for (const auto& [k, c] : x.central) emit(c, centrals_[k]);
  if (first) os << "0";
  return os.str();
}

CheckResult super_jacobi_check(const Presentation& P, const ModeIndex& x, const ModeIndex& y, const ModeIndex& z) {
  const FiniteField& f = P.field();
  const int px = P.parity(x.gen), py = P.parity(y.gen), pz = P.parity(z.gen);
  auto term = [&](const ModeIndex& a, const ModeIndex& b, const ModeIndex& c) {
    return P.bracket(lie_mode(a), P.bracket(b, c));
  };
  LieElement sum;
  sum.add(f, term(x, y, z), sign_elem(f, px * pz));
  sum.add(f, term(y, z, x), sign_elem(f, py * px));
  sum.add(f, term(z, x, y), sign_elem(f, pz * py));
  CheckResult r;
  if (!sum.is_zero()) {
    r.ok = false;
    r.detail = "Jacobi sum for (" + P.format_mode(x) + ", " + P.format_mode(y) + ", " + P.format_mode(z) +
               ") is " + P.format(sum);
  }
  return r;
}

LieElement PMapping::apply(const Presentation& P, const ModeIndex& x) const {
  if (P.parity(x.gen) != 0) throw ParameterError("the p-mapping is defined on even elements only");
  auto it = rules.find(x.gen);
  if (it == rules.end()) throw ParameterError("no p-mapping rule for " + P.generators()[x.gen].name);
  const unsigned p = P.prime();
  LieElement out;
  if (it->second.divisible_only && (!is_integral(x.mode) || x.mode.numerator() % static_cast<std::int64_t>(p) != 0))
    return out;
  for (const auto& [g, c] : it->second.images) {
    ModeIndex y{g, x.mode * static_cast<std::int64_t>(p)};
    P.require_lattice(y);
    out.add(P.field(), y, c);
  }
  return out;
}

CheckResult restrictedness_check(const Presentation& P, const ModeIndex& x, const std::vector<ModeIndex>& targets,
                                 const PMapping& pmap) {
  if (P.parity(x.gen) != 0) throw ParameterError("restrictedness is tested on even elements");
  LieElement image = pmap.apply(P, x);
  CheckResult r;
  for (const auto& t : targets) {
    LieElement v = lie_mode(t);
    for (unsigned i = 0; i < P.prime() && !v.is_zero(); ++i) v = P.bracket(lie_mode(x), v);
    LieElement w = P.bracket(image, lie_mode(t));
    if (!(v == w)) {
      r.ok = false;
      r.detail = "(ad " + P.format_mode(x) + ")^p " + P.format_mode(t) + " = " + P.format(v) + " but expected " +
                 P.format(w);
      return r;
    }
  }
  return r;
}

FiniteLieSuperalgebra::FiniteLieSuperalgebra(const FiniteField& f, std::vector<std::string> n, std::vector<int> par)
    : field(&f), names(std::move(n)), parity(std::move(par)) {
  const std::size_t d = names.size();
  if (parity.size() != d) throw ParameterError("parity list does not match the basis");
  structure.assign(d, std::vector<std::vector<Elem>>(d, std::vector<Elem>(d, 0)));
  form = Matrix(f, d, d);
}

void FiniteLieSuperalgebra::set_bracket(int i, int j, const std::vector<std::pair<int, Elem>>& value) {
  const std::size_t d = names.size();
  std::vector<Elem> v(d, 0);
  for (const auto& [k, c] : value) v[k] = field->add(v[k], c);
  structure[i][j] = v;
  Elem s = field->neg(sign_elem(*field, parity[i] * parity[j]));
  for (auto& c : v) c = field->mul(s, c);
  structure[j][i] = v;
}

void FiniteLieSuperalgebra::set_form(int i, int j, Elem v) {
  form.at(i, j) = v;
  form.at(j, i) = v;
}

std::vector<Elem> FiniteLieSuperalgebra::bracket(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
  const std::size_t d = names.size();
  std::vector<Elem> out(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b[j] == 0) continue;
      Elem c = field->mul(a[i], b[j]);
      for (std::size_t k = 0; k < d; ++k)
        if (structure[i][j][k]) out[k] = field->add(out[k], field->mul(c, structure[i][j][k]));
    }
  }
  return out;
}

CheckResult FiniteLieSuperalgebra::validate() const {
  const FiniteField& f = *field;
  const int d = dim();
  CheckResult r;
  auto fail = [&](const std::string& msg) {
    r.ok = false;
    r.detail = msg;
    return r;
  };
  auto unit = [&](int i) {
    std::vector<Elem> v(d, 0);
    v[i] = 1;
    return v;
  };
  auto parity_of = [&](const std::vector<Elem>& v) {
    int par = -1;
    for (int k = 0; k < d; ++k)
      if (v[k]) {
        if (par >= 0 && par != parity[k]) return 2;
        par = parity[k];
      }
    return par;
  };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (parity[i] && parity[j])
        for (Elem c : structure[i][j])
          if (c) return fail("[" + names[i] + ", " + names[j] + "] must vanish for odd elements");
      int pv = parity_of(structure[i][j]);
      if (pv >= 0 && pv != (parity[i] ^ parity[j])) return fail("bracket does not respect parity");
      Elem s = f.neg(sign_elem(f, parity[i] * parity[j]));
      for (int k = 0; k < d; ++k)
        if (structure[j][i][k] != f.mul(s, structure[i][j][k]))
          return fail("super skew symmetry fails for " + names[i] + ", " + names[j]);
      if (form.at(i, j) != form.at(j, i)) return fail("form is not symmetric");
      if (form.at(i, j) && parity[i] != parity[j]) return fail("form pairs even with odd");
    }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        auto x = unit(i), y = unit(j), z = unit(k);
        auto lhs = bracket(x, bracket(y, z));
        auto a = bracket(bracket(x, y), z);
        auto b = bracket(y, bracket(x, z));
        Elem s = sign_elem(f, parity[i] * parity[j]);
        for (int t = 0; t < d; ++t)
          if (lhs[t] != f.add(a[t], f.mul(s, b[t])))
            return fail("Jacobi fails on " + names[i] + ", " + names[j] + ", " + names[k]);
        if (parity[i]) continue;
        Elem l = 0, rr = 0;
        auto xy = bracket(x, y), xz = bracket(x, z);
        for (int t = 0; t < d; ++t) {
          l = f.add(l, f.mul(xy[t], form.at(t, k)));
          rr = f.add(rr, f.mul(form.at(j, t), xz[t]));
        }
        if (l != f.neg(rr))
          return fail("form is not invariant on " + names[i] + ", " + names[j] + ", " + names[k]);
      }
  return r;
}

std::vector<Eigenspace> twist_decompose(const FiniteLieSuperalgebra& g, const Matrix& tau, unsigned T) {
  const FiniteField& f = *g.field;
  const std::size_t d = g.names.size();
  if (T == 0) throw TwistError("the order must be positive");
  if (T % f.p() == 0) throw TwistError("p divides the order " + std::to_string(T));
  if (tau.rows() != d || tau.cols() != d) throw TwistError("automorphism has the wrong size");
  Matrix power = Matrix::identity(f, d);
  for (unsigned i = 0; i < T; ++i) power = power * tau;
  if (!(power == Matrix::identity(f, d))) throw TwistError("tau^T is not the identity");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (tau.at(i, j) && g.parity[i] != g.parity[j]) throw TwistError("tau does not preserve parity");
  auto column = [&](std::size_t j) {
    std::vector<Elem> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = tau.at(i, j);
    return v;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto lhs = g.bracket(column(i), column(j));
      std::vector<Elem> e(d, 0);
      std::vector<Elem> br = g.structure[i][j];
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t t = 0; t < d; ++t) e[k] = f.add(e[k], f.mul(tau.at(k, t), br[t]));
      if (lhs != e) throw TwistError("tau is not a Lie superalgebra automorphism");
      Elem form_image = 0;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          form_image = f.add(form_image, f.mul(f.mul(tau.at(a, i), tau.at(b, j)), g.form.at(a, b)));
      if (form_image != g.form.at(i, j)) throw TwistError("tau does not preserve the form");
    }
  auto eta = f.primitive_root_of_unity(T);
  if (!eta)
    throw TwistError("F_" + std::to_string(f.q()) + " has no primitive " + std::to_string(T) +
                     "-th root of unity; use a field extension");
  std::vector<Eigenspace> out;
  std::size_t total = 0;
  for (unsigned i = 0; i < T; ++i) {
    Elem lambda = f.pow(*eta, i);
    std::vector<std::vector<Elem>> cols;
    for (int par = 0; par <= 1; ++par) {
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < d; ++k)
        if (g.parity[k] == par) idx.push_back(k);
      if (idx.empty()) continue;
      Matrix block(f, idx.size(), idx.size());
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
          block.at(a, b) = f.sub(tau.at(idx[a], idx[b]), a == b ? lambda : 0);
      Matrix ker = block.kernel();
      for (std::size_t c = 0; c < ker.cols(); ++c) {
        std::vector<Elem> v(d, 0);
        for (std::size_t a = 0; a < idx.size(); ++a) v[idx[a]] = ker.at(a, c);
        cols.push_back(v);
      }
    }
    Eigenspace e;
    e.index = i;
    e.eigenvalue = lambda;
    e.basis = Matrix(f, d, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t a = 0; a < d; ++a) e.basis.at(a, c) = cols[c][a];
    total += cols.size();
    out.push_back(std::move(e));
  }
  if (total != d) throw TwistError("tau is not diagonalizable over F_" + std::to_string(f.q()));
  return out;
}

FiniteLieSuperalgebra change_basis(const FiniteLieSuperalgebra& g, const Matrix& B, std::vector<std::string> names) {
  const FiniteField& f = *g.field;
  const std::size_t d = g.names.size();
  Matrix Binv = B.inverse();
  std::vector<int> par(d);
  std::vector<std::vector<Elem>> cols(d, std::vector<Elem>(d));
  for (std::size_t c = 0; c < d; ++c) {
    int pc = -1;
    for (std::size_t a = 0; a < d; ++a) {
      cols[c][a] = B.at(a, c);
      if (B.at(a, c)) {
        if (pc >= 0 && pc != g.parity[a]) throw ParameterError("basis vector is not homogeneous");
        pc = g.parity[a];
      }
    }
    par[c] = pc < 0 ? 0 : pc;
  }
  FiniteLieSuperalgebra h(f, std::move(names), par);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto v = g.bracket(cols[i], cols[j]);
      for (std::size_t k = 0; k < d; ++k) {
        Elem s = 0;
        for (std::size_t t = 0; t < d; ++t) s = f.add(s, f.mul(Binv.at(k, t), v[t]));
        h.structure[i][j][k] = s;
      }
    }
  h.form = B.transpose() * g.form * B;
  return h;
}

TwistedLoop eigenbasis(const FiniteLieSuperalgebra& g, const Matrix& tau, unsigned T) {
  const FiniteField& f = *g.field;
  const std::size_t d = g.names.size();
  auto spaces = twist_decompose(g, tau, T);
  TwistedLoop out;
  out.basis = Matrix(f, d, d);
  std::vector<std::string> names;
  std::size_t c = 0;
  for (const auto& e : spaces)
    for (std::size_t k = 0; k < e.basis.cols(); ++k, ++c) {
      int support = -1, count = 0;
      for (std::size_t a = 0; a < d; ++a) {
        out.basis.at(a, c) = e.basis.at(a, k);
        if (e.basis.at(a, k)) {
          support = static_cast<int>(a);
          ++count;
        }
      }
      if (count == 1 && e.basis.at(support, k) == 1)
        names.push_back(g.names[support]);
      else
        names.push_back("b" + std::to_string(e.index) + "_" + std::to_string(k));
      out.exponents.push_back(Exponent(e.index, T));
    }
  out.eigen_algebra = change_basis(g, out.basis, names);
  return out;
}

Presentation loop_algebra(const FiniteLieSuperalgebra& g, const std::vector<Exponent>& lattices,
                          const std::string& name) {
  const FiniteField& f = *g.field;
  CheckResult ok = g.validate();
  if (!ok.ok) throw ParameterError("invalid finite Lie superalgebra: " + ok.detail);
  Presentation P(name, f);
  const int d = g.dim();
  for (int i = 0; i < d; ++i) {
    Generator gen;
    gen.name = g.names[i];
    gen.parity = g.parity[i];
    gen.weight = g.parity[i] ? Exponent(1, 2) : Exponent(1);
    gen.offset = g.parity[i] ? Exponent(-1, 2) : Exponent(0);
    gen.lattice = lattices[i];
    gen.twist = lattices[i];
    P.add_generator(gen);
  }
  const int k = P.add_central("k");
  using E = Expr;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      BracketRule r;
      r.first = i;
      r.second = j;
      for (int t = 0; t < d; ++t)
        if (Elem c = g.structure[i][j][t]) r.gen_terms.push_back({c, E::lit(1), t, E::add(E::m(), E::n())});
      if (Elem c = g.form.at(i, j)) {
        if (g.parity[i] == 0)
          r.central_terms.push_back({c, E::mul(E::m(), E::delta(E::add(E::m(), E::n()))), k});
        else
          r.central_terms.push_back({c, E::delta(E::add(E::add(E::m(), E::n()), E::lit(1))), k});
      }
      if (!r.gen_terms.empty() || !r.central_terms.empty()) P.set_bracket(std::move(r));
    }
  P.validate();
  return P;
}

Presentation affine(const FiniteLieSuperalgebra& g, const std::string& name) {
  return loop_algebra(g, std::vector<Exponent>(g.names.size(), Exponent(0)), name);
}

Presentation twisted_affine(const FiniteLieSuperalgebra& g, const Matrix& tau, unsigned T, const std::string& name) {
  TwistedLoop tl = eigenbasis(g, tau, T);
  return loop_algebra(tl.eigen_algebra, tl.exponents, name);
}

Presentation clifford_affine(const FiniteField& f, const Matrix& form, const std::string& name) {
  const std::size_t d = form.rows();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) names.push_back(d == 1 ? "e" : "e" + std::to_string(i + 1));
  FiniteLieSuperalgebra g(f, names, std::vector<int>(d, 1));
  g.form = form;
  return affine(g, name);
}

namespace {

Presentation superconformal(unsigned p, bool ramond_sector) {
  require_odd_prime(p);
  if (p == 3) throw ParameterError("the superconformal algebras need p > 3");
  const FiniteField& f = FiniteField::get(p);
  Presentation P(ramond_sector ? "ramond" : "neveu_schwarz", f);
  Generator L{"L", 0, Exponent(2), Exponent(0), Exponent(0), Exponent(0)};
  Generator G{ramond_sector ? "F" : "G", 1, Exponent(3, 2), Exponent(0), ramond_sector ? Exponent(0) : Exponent(1, 2),
              ramond_sector ? Exponent(1, 2) : Exponent(0)};
  const int l = P.add_generator(L);
  const int g = P.add_generator(G);
  const int c = P.add_central("c");
  using E = Expr;
  auto mpn = [] { return E::add(E::m(), E::n()); };
  BracketRule ll;
  ll.first = l;
  ll.second = l;
  ll.gen_terms.push_back({1, E::sub(E::m(), E::n()), l, mpn()});
  ll.central_terms.push_back({1, E::mul(E::mul(E::lit(1, 2), E::binom(E::add(E::m(), E::lit(1)), 3)), E::delta(mpn())), c});
  P.set_bracket(ll);
  BracketRule lg;
  lg.first = l;
  lg.second = g;
  lg.gen_terms.push_back({1, E::sub(E::mul(E::lit(1, 2), E::m()), E::n()), g, mpn()});
  P.set_bracket(lg);
  BracketRule gg;
  gg.first = g;
  gg.second = g;
  gg.gen_terms.push_back({1, E::lit(2), l, mpn()});
  gg.central_terms.push_back(
      {1, E::mul(E::mul(E::lit(1, 3), E::sub(E::mul(E::m(), E::m()), E::lit(1, 4))), E::delta(mpn())), c});
  P.set_bracket(gg);
  P.validate();
  return P;
}

}  // namespace

Presentation neveu_schwarz(unsigned p) { return superconformal(p, false); }
Presentation ramond(unsigned p) { return superconformal(p, true); }

PMapping ns_pmapping(const Presentation& ns) {
  PMapping pm;
  int l = *ns.find_generator("L");
  pm.rules[l] = PMapRule{{{l, 1}}, true};
  return pm;
}

}  // namespace modzhu
