#include "modzhu/formal_calculus.hpp"

namespace modzhu {

namespace {

std::string window_text(const Window& w) {
  std::string lo = w.lo ? format_exponent(*w.lo) : "-inf";
  std::string hi = w.hi ? format_exponent(*w.hi) : "+inf";
  return "[" + lo + ", " + hi + "]";
}

}  // namespace

Window Window::shifted(const Exponent& d) const {
  Window w;
  if (lo) w.lo = *lo + d;
  if (hi) w.hi = *hi + d;
  return w;
}

Window Window::meet(const Window& o) const {
  Window w = *this;
  if (o.lo && (!w.lo || *o.lo > *w.lo)) w.lo = o.lo;
  if (o.hi && (!w.hi || *o.hi < *w.hi)) w.hi = o.hi;
  return w;
}

Distribution Distribution::monomial(const FiniteField& f, const Exponent& alpha, Elem c) {
  Distribution d(f);
  d.add_term(alpha, c);
  return d;
}

Elem Distribution::coefficient(const Exponent& alpha) const {
  if (!window_.contains(alpha))
    throw TruncationError("exponent " + format_exponent(alpha) + " outside trusted window " +
                          window_text(window_));
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0 : it->second;
}

void Distribution::add_term(const Exponent& alpha, Elem c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second = f_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

Distribution Distribution::operator+(const Distribution& o) const {
  Distribution r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  r.window_ = window_.meet(o.window_);
  return r;
}

Distribution Distribution::scaled(Elem c) const {
  Distribution r(*f_);
  for (const auto& [e, v] : terms_) r.add_term(e, f_->mul(c, v));
  r.window_ = window_;
  return r;
}

bool Distribution::operator==(const Distribution& o) const {
  return terms_ == o.terms_ && window_.lo == o.window_.lo && window_.hi == o.window_.hi;
}

Elem BivariateSeries::coefficient(const Exponent& a, const Exponent& b) const {
  if (!w1_.contains(a) || !w2_.contains(b))
    throw TruncationError("exponent pair (" + format_exponent(a) + ", " + format_exponent(b) +
                          ") outside trusted windows " + window_text(w1_) + " x " +
                          window_text(w2_));
  auto it = terms_.find({a, b});
  return it == terms_.end() ? 0 : it->second;
}

void BivariateSeries::add_term(const Exponent& a, const Exponent& b, Elem c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(Key{a, b}, c);
  if (!inserted) {
    it->second = f_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {

Direction combine(Direction a, Direction b) {
  if (a == Direction::Undirected) return b;
  if (b == Direction::Undirected) return a;
  if (a != b) throw DirectionError("series expanded in opposite directions cannot be combined");
  return a;
}

}  // namespace

BivariateSeries BivariateSeries::operator+(const BivariateSeries& o) const {
  BivariateSeries r(*f_, combine(dir_, o.dir_));
  for (const auto& [k, c] : terms_) r.add_term(k.first, k.second, c);
  for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
  r.set_windows(w1_.meet(o.w1_), w2_.meet(o.w2_));
  return r;
}

BivariateSeries BivariateSeries::scaled(Elem c) const {
  BivariateSeries r(*f_, dir_);
  for (const auto& [k, v] : terms_) r.add_term(k.first, k.second, f_->mul(c, v));
  r.set_windows(w1_, w2_);
  return r;
}

BivariateSeries BivariateSeries::times_polynomial(const BivariateSeries& poly) const {
  if (!poly.w1_.exact() || !poly.w2_.exact())
    throw DirectionError("times_polynomial expects an exactly known factor");
  BivariateSeries r(*f_, combine(dir_, poly.dir_));
  std::optional<Exponent> max1, min1, max2, min2;
  for (const auto& [k, c] : poly.terms_) {
    if (!max1 || k.first > *max1) max1 = k.first;
    if (!min1 || k.first < *min1) min1 = k.first;
    if (!max2 || k.second > *max2) max2 = k.second;
    if (!min2 || k.second < *min2) min2 = k.second;
  }
  for (const auto& [k, c] : terms_)
    for (const auto& [pk, pc] : poly.terms_)
      r.add_term(k.first + pk.first, k.second + pk.second, f_->mul(c, pc));
  // A product coefficient is trusted only if every contributing factor term is.
  Window n1, n2;
  if (max1) {
    if (w1_.lo) n1.lo = *w1_.lo + *max1;
    if (w1_.hi) n1.hi = *w1_.hi + *min1;
    if (w2_.lo) n2.lo = *w2_.lo + *max2;
    if (w2_.hi) n2.hi = *w2_.hi + *min2;
  } else {
    n1 = w1_;
    n2 = w2_;
  }
  r.set_windows(n1, n2);
  return r;
}

BivariateSeries BivariateSeries::hasse2(unsigned k) const {
  BivariateSeries r(*f_, dir_);
  for (const auto& [key, c] : terms_)
    r.add_term(key.first, key.second - Exponent(k), f_->mul(f_->binom(key.second, k), c));
  r.set_windows(w1_, w2_.shifted(Exponent(-static_cast<std::int64_t>(k))));
  return r;
}

bool BivariateSeries::is_zero_on_window() const {
  for (const auto& [k, c] : terms_)
    if (w1_.contains(k.first) && w2_.contains(k.second) && c != 0) return false;
  return true;
}

Distribution hasse(unsigned k, const Distribution& f) {
  const FiniteField& F = f.field();
  Distribution r(F);
  for (const auto& [alpha, c] : f.terms())
    r.add_term(alpha - Exponent(k), F.mul(F.binom(alpha, k), c));
  r.set_window(f.window().shifted(Exponent(-static_cast<std::int64_t>(k))));
  return r;
}

BivariateSeries binomial_expand(const FiniteField& f, const Exponent& alpha, Direction dir,
                                unsigned depth, int sign) {
  if (sign != 1 && sign != -1) throw ParameterError("binomial_expand: sign must be +1 or -1");
  if (dir == Direction::Undirected)
    throw DirectionError("binomial_expand needs an expansion direction");
  BivariateSeries r(f, dir);
  Elem s = sign == 1 ? f.one() : f.neg(f.one());
  if (dir == Direction::ExpandInSecond) {
    Elem si = f.one();
    for (unsigned i = 0; i <= depth; ++i) {
      r.add_term(alpha - Exponent(i), Exponent(i), f.mul(si, f.binom(alpha, i)));
      si = f.mul(si, s);
    }
    // Integer exponent >= 0: the expansion terminates and is exact.
    bool finite = is_integral(alpha) && alpha >= 0 && alpha <= Exponent(depth);
    Window w2;
    if (!finite) w2.hi = Exponent(depth);
    r.set_windows(Window{}, w2);
  } else {
    // (s z2 + z1)^alpha: needs s^alpha, defined for s = 1 or integral alpha.
    if (sign == -1 && !is_integral(alpha))
      throw ParameterError("(-z2 + z1)^alpha needs an integral alpha");
    Elem lead = f.one();
    if (sign == -1 && (alpha.numerator() % 2 != 0)) lead = f.neg(f.one());
    for (unsigned i = 0; i <= depth; ++i) {
      // s^{alpha-i} = s^alpha s^{-i}; for s = -1 this is lead (-1)^i.
      Elem c = f.binom(alpha, i);
      if (sign == -1 && i % 2 == 1) c = f.neg(c);
      r.add_term(Exponent(i), alpha - Exponent(i), f.mul(lead, c));
    }
    bool finite = is_integral(alpha) && alpha >= 0 && alpha <= Exponent(depth);
    Window w1;
    if (!finite) w1.hi = Exponent(depth);
    r.set_windows(w1, Window{});
  }
  return r;
}

BivariateSeries translate(const Distribution& f, unsigned depth) {
  const FiniteField& F = f.field();
  BivariateSeries r(F, Direction::ExpandInSecond);
  for (unsigned n = 0; n <= depth; ++n) {
    Distribution d = hasse(n, f);
    for (const auto& [e, c] : d.terms()) r.add_term(e, Exponent(n), c);
  }
  Window w2;
  w2.hi = Exponent(depth);
  Window w1 = f.window();
  if (w1.lo) w1.lo = *w1.lo - Exponent(depth);
  r.set_windows(w1, w2);
  return r;
}

BivariateSeries expansion_difference(const BivariateSeries& a, const BivariateSeries& b) {
  if (a.direction() != Direction::ExpandInSecond || b.direction() != Direction::ExpandInFirst)
    throw DirectionError("expansion_difference expects (expand-in-second, expand-in-first)");
  const FiniteField& f = a.field();
  BivariateSeries r(f, Direction::Undirected);
  for (const auto& [k, c] : a.terms()) r.add_term(k.first, k.second, c);
  for (const auto& [k, c] : b.terms()) r.add_term(k.first, k.second, f.neg(c));
  // The first expansion is trusted for z2 <= D, the second for z1 <= D.
  // Both are supported on a + b = const, so each bound transfers to the other variable.
  r.set_windows(a.window1().meet(b.window1()), a.window2().meet(b.window2()));
  return r;
}

BivariateSeries delta_derivative(const FiniteField& f, unsigned n, unsigned depth) {
  Exponent alpha(-static_cast<std::int64_t>(n) - 1);
  unsigned d = depth + n + 1;
  BivariateSeries a = binomial_expand(f, alpha, Direction::ExpandInSecond, d, -1);
  BivariateSeries b = binomial_expand(f, alpha, Direction::ExpandInFirst, d, -1);
  // a is exact in z1 but trusted only for z2 <= d, i.e. z1 >= alpha - d; symmetric for b.
  Window wa1, wa2, wb1, wb2;
  wa1.lo = alpha - Exponent(d);
  wa2.hi = Exponent(d);
  wb1.hi = Exponent(d);
  wb2.lo = alpha - Exponent(d);
  a.set_windows(wa1, wa2);
  b.set_windows(wb1, wb2);
  BivariateSeries r = expansion_difference(a, b);
  Window w;
  w.lo = Exponent(-static_cast<std::int64_t>(depth));
  w.hi = Exponent(depth);
  r.set_windows(r.window1().meet(w), r.window2().meet(w));
  return r;
}

BivariateSeries delta_derivative_product(const FiniteField& f, unsigned m, unsigned n,
                                         unsigned depth) {
  BivariateSeries delta = delta_derivative(f, n, depth + m);
  BivariateSeries poly(f, Direction::Undirected);
  for (unsigned j = 0; j <= m; ++j) {
    Elem c = f.reduce(binom(Exponent(m), j));
    if (j % 2 == 1) c = f.neg(c);
    poly.add_term(Exponent(m - j), Exponent(j), c);
  }
  BivariateSeries r = delta.times_polynomial(poly);
  Window w;
  w.lo = Exponent(-static_cast<std::int64_t>(depth));
  w.hi = Exponent(depth);
  r.set_windows(r.window1().meet(w), r.window2().meet(w));
  return r;
}

bool delta_derivative_annihilation(const FiniteField& f, unsigned m, unsigned n, unsigned depth) {
  if (m <= n)
    throw ParameterError("delta_derivative_annihilation requires m > n (got m = " +
                         std::to_string(m) + ", n = " + std::to_string(n) + ")");
  return delta_derivative_product(f, m, n, depth).is_zero_on_window();
}

std::size_t delta_derivative_rank(const FiniteField& f, unsigned n, const Exponent& alpha,
                                  unsigned depth) {
  // d^{(j)}_{z2} sum_k z1^{k+alpha} z2^{-k-1-alpha} has coefficient binom(-k-1-alpha, j)
  // at z1^{k+alpha}; rows j, columns k in [-depth, depth].
  std::size_t cols = 2 * depth + 1;
  Matrix m(f, n + 1, cols);
  for (unsigned j = 0; j <= n; ++j)
    for (std::size_t c = 0; c < cols; ++c) {
      std::int64_t k = static_cast<std::int64_t>(c) - static_cast<std::int64_t>(depth);
      m.at(j, c) = f.binom(Exponent(-k - 1) - alpha, j);
    }
  return m.rank();
}

Elem residue(const Distribution& f) { return f.coefficient(Exponent(-1)); }

Distribution residue(const BivariateSeries& s, Variable v) {
  const FiniteField& f = s.field();
  const Window& wv = v == Variable::First ? s.window1() : s.window2();
  if (!wv.contains(Exponent(-1)))
    throw TruncationError("residue: exponent -1 outside trusted window " + window_text(wv));
  Distribution r(f);
  for (const auto& [k, c] : s.terms()) {
    const Exponent& e = v == Variable::First ? k.first : k.second;
    const Exponent& other = v == Variable::First ? k.second : k.first;
    if (e == Exponent(-1)) r.add_term(other, c);
  }
  r.set_window(v == Variable::First ? s.window2() : s.window1());
  return r;
}

}  // namespace modzhu
