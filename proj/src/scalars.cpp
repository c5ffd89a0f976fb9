#include "modzhu/scalars.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace modzhu {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_odd_prime(std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
  if (p == 2) throw ParameterError("p = 2 is not supported; characteristic must be odd");
}

DScalar to_dscalar(const Exponent& e) {
  return DScalar(BigInt(e.numerator()), BigInt(e.denominator()));
}

DScalar parse_dscalar(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return DScalar(BigInt(text));
  BigInt num(text.substr(0, slash));
  BigInt den(text.substr(slash + 1));
  if (den == 0) throw InvalidScalar("zero denominator in " + text);
  return DScalar(num, den);
}

std::string format_dscalar(const DScalar& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << "/" << denominator(x);
  return os.str();
}

std::string format_exponent(const Exponent& e) {
  std::string s = std::to_string(e.numerator());
  if (e.denominator() != 1) s += "/" + std::to_string(e.denominator());
  return s;
}

std::int64_t floor_exp(const Exponent& e) {
  std::int64_t n = e.numerator(), d = e.denominator();
  std::int64_t q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

Exponent frac_exp(const Exponent& e) { return e - Exponent(floor_exp(e)); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

DScalar binom(const DScalar& alpha, unsigned i) {
  DScalar r = 1;
  for (unsigned j = 0; j < i; ++j) {
    r *= (alpha - j);
    r /= (j + 1);
  }
  return r;
}

DScalar binom(const Exponent& alpha, unsigned i) { return binom(to_dscalar(alpha), i); }

bool chu_vandermonde_check(const DScalar& d, unsigned k, unsigned p) {
  require_odd_prime(p);
  DScalar s = 0;
  for (unsigned i = 0; i <= k; ++i) s += binom(d, i) * binom(DScalar(-d), k - i);
  return FiniteField::get(p).reduce(s) == 0;
}

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

/// Polynomials over F_p as coefficient vectors, low degree first.
using Poly = std::vector<unsigned>;

Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  while (a.size() >= m.size()) {
    unsigned lead = a.back();
    if (lead != 0) {
      std::size_t shift = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i)
        a[shift + i] = static_cast<unsigned>((a[shift + i] + (p - lead) * m[i]) % p);
    }
    a.pop_back();
  }
  return a;
}

bool has_root_factor(const Poly& m, unsigned p) {
  // Irreducibility by exhaustive division by all monic polynomials of
  // degree <= deg(m)/2; fields here are tiny.
  std::size_t n = m.size() - 1;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly f(d + 1, 0);
      std::uint64_t x = c;
      for (std::size_t i = 0; i < d; ++i) {
        f[i] = static_cast<unsigned>(x % p);
        x /= p;
      }
      f[d] = 1;
      Poly r = poly_mod(m, f, p);
      bool zero = true;
      for (unsigned v : r)
        if (v != 0) zero = false;
      if (zero) return true;
    }
  }
  return false;
}

}  // namespace

const FiniteField& FiniteField::get(unsigned p, unsigned k) {
  require_odd_prime(p);
  if (k == 0) throw ParameterError("field extension degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) q *= p;
  if (q > (1u << 20)) throw ParameterError("field too large for table arithmetic");
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FiniteField>> registry;
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& slot = registry[{p, k}];
  if (!slot) slot.reset(new FiniteField(p, k));
  return *slot;
}

FiniteField::FiniteField(unsigned p, unsigned k) : p_(p), k_(k), q_(1) {
  for (unsigned i = 0; i < k; ++i) q_ *= p;
  if (k_ == 1) {
    modulus_ = {0, 1};
    return;
  }
  // Smallest monic irreducible of degree k in base-p enumeration order.
  std::uint64_t count = q_;
  for (std::uint64_t c = 0; c < count; ++c) {
    Poly m(k + 1, 0);
    std::uint64_t x = c;
    for (unsigned i = 0; i < k; ++i) {
      m[i] = static_cast<unsigned>(x % p);
      x /= p;
    }
    m[k] = 1;
    if (m[0] == 0) continue;
    if (!has_root_factor(m, p)) {
      modulus_ = m;
      break;
    }
  }
  // Smallest generator of the multiplicative group.
  for (Elem g = 1; g < q_; ++g) {
    std::vector<Elem> e;
    e.reserve(q_ - 1);
    Elem cur = 1;
    bool ok = true;
    for (unsigned i = 0; i < q_ - 1; ++i) {
      if (i > 0 && cur == 1) {
        ok = false;
        break;
      }
      e.push_back(cur);
      cur = poly_mul(cur, g);
    }
    if (ok && cur == 1) {
      exp_ = std::move(e);
      break;
    }
  }
  log_.assign(q_, 0);
  for (unsigned i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
}

std::vector<unsigned> FiniteField::digits(Elem a) const {
  std::vector<unsigned> d(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

FiniteField::Elem FiniteField::from_digits(const std::vector<unsigned>& d) const {
  Elem a = 0;
  for (unsigned i = k_; i-- > 0;) a = a * p_ + d[i];
  return a;
}

FiniteField::Elem FiniteField::poly_mul(Elem a, Elem b) const {
  auto da = digits(a), db = digits(b);
  Poly prod(2 * k_, 0);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  Poly r = poly_mod(prod, modulus_, p_);
  r.resize(k_, 0);
  return from_digits(r);
}

FiniteField::Elem FiniteField::add_slow(Elem a, Elem b) const {
  Elem r = 0, scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    unsigned s = (a % p_ + b % p_) % p_;
    r += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::neg_slow(Elem a) const {
  Elem r = 0, scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    unsigned d = a % p_;
    r += ((p_ - d) % p_) * scale;
    scale *= p_;
    a /= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw InvalidScalar("division by zero in finite field");
  if (k_ == 1) {
    // Extended Euclid.
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t qq = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
      std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
    }
    if (t < 0) t += p_;
    return static_cast<Elem>(t);
  }
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t n) const {
  Elem r = 1, b = a;
  while (n > 0) {
    if (n & 1) r = mul(r, b);
    b = mul(b, b);
    n >>= 1;
  }
  return r;
}

FiniteField::Elem FiniteField::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::from_bigint(const BigInt& n) const {
  BigInt r = n % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r.convert_to<unsigned>());
}

FiniteField::Elem FiniteField::reduce(const DScalar& x) const {
  BigInt den = denominator(x);
  if (den % p_ == 0)
    throw InvalidScalar("denominator of " + format_dscalar(x) + " is divisible by p = " +
                        std::to_string(p_));
  return mul(from_bigint(numerator(x)), inv(from_bigint(den)));
}

FiniteField::Elem FiniteField::reduce(const Exponent& x) const {
  if (x.denominator() % p_ == 0)
    throw InvalidScalar("denominator of " + format_exponent(x) + " is divisible by p = " +
                        std::to_string(p_));
  return mul(from_int(x.numerator()), inv(from_int(x.denominator())));
}

FiniteField::Elem FiniteField::binom(const Exponent& alpha, unsigned i) const {
  static std::mutex m;
  static std::map<std::tuple<unsigned, std::int64_t, std::int64_t, unsigned>, Elem> cache;
  auto key = std::make_tuple(p_, alpha.numerator(), alpha.denominator(), i);
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Elem v = reduce(modzhu::binom(alpha, i));
  std::lock_guard<std::mutex> lock(m);
  cache.emplace(key, v);
  return v;
}

std::vector<FiniteField::Elem> FiniteField::sqrts(Elem a) const {
  std::vector<Elem> r;
  for (Elem x = 0; x < q_; ++x)
    if (mul(x, x) == a) r.push_back(x);
  return r;
}

std::optional<FiniteField::Elem> FiniteField::sqrt(Elem a) const {
  auto r = sqrts(a);
  if (r.empty()) return std::nullopt;
  return r.front();
}

std::optional<FiniteField::Elem> FiniteField::primitive_root_of_unity(unsigned T) const {
  if (T == 0) return std::nullopt;
  for (Elem x = 1; x < q_; ++x) {
    if (pow(x, T) != 1) continue;
    bool primitive = true;
    for (unsigned d = 1; d < T; ++d)
      if (T % d == 0 && pow(x, d) == 1) primitive = false;
    if (primitive) return x;
  }
  return std::nullopt;
}

std::string FiniteField::format(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  auto d = digits(a);
  std::string s;
  for (unsigned i = 0; i < k_; ++i) {
    if (d[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(d[i]);
    } else {
      if (d[i] != 1) s += std::to_string(d[i]) + "*";
      s += "w";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

Fq reduce(const DScalar& a, unsigned p) {
  const FiniteField& f = FiniteField::get(p);
  return Fq(f, f.reduce(a));
}

}  // namespace modzhu
