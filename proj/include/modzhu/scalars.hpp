#pragma once

/// @file scalars.hpp
/// @brief Exact rationals with denominators prime to p, reduction mod p,
/// binomial coefficients of rationals and finite fields F_{p^k}.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modzhu {

/// @brief Exact rational number; the coefficient universe before reduction.
using DScalar = boost::multiprecision::cpp_rational;
/// @brief Arbitrary precision integer.
using BigInt = boost::multiprecision::cpp_int;
/// @brief Rational mode index or power of a formal variable.
using Exponent = boost::rational<std::int64_t>;

/// @brief Raised when a rational leaves the ring of p-integral rationals.
class InvalidScalar : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// @brief Raised for out-of-range parameters (non-prime p, p = 2, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// @brief Raised when a computation needs data beyond a declared cutoff.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief Deterministic primality test for small integers.
bool is_prime(std::uint64_t n);

/// @brief Throws ParameterError unless p is an odd prime.
void require_odd_prime(std::uint64_t p);

/// @brief Converts an exponent to an exact rational.
DScalar to_dscalar(const Exponent& e);

/// @brief Parses "a" or "a/b" into an exact rational.
DScalar parse_dscalar(const std::string& text);

/// @brief Prints a rational as "a" or "a/b".
std::string format_dscalar(const DScalar& x);

/// @brief Prints an exponent as "a" or "a/b".
std::string format_exponent(const Exponent& e);

/// @brief Floor of a rational exponent.
std::int64_t floor_exp(const Exponent& e);

/// @brief Fractional part in [0, 1).
Exponent frac_exp(const Exponent& e);

/// @brief True when e is an integer.
inline bool is_integral(const Exponent& e) { return e.denominator() == 1; }

/// @brief Least common multiple of two positive integers.
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// @brief Generalized binomial coefficient alpha (alpha-1) ... (alpha-i+1) / i!.
DScalar binom(const DScalar& alpha, unsigned i);

/// @brief Generalized binomial coefficient of an exponent.
DScalar binom(const Exponent& alpha, unsigned i);

/// @brief Checks that sum_{i<=k} binom(d,i) binom(-d,k-i) reduces to zero mod p.
bool chu_vandermonde_check(const DScalar& d, unsigned k, unsigned p);

/// @brief The finite field F_{p^k}.
///
/// Elements are integers in [0, p^k) read as base-p digit vectors, that is
/// polynomials in a root w of a fixed irreducible polynomial.  The prime
/// field is embedded as the values 0..p-1.  Instances are interned, so
/// pointer equality is field equality.
class FiniteField {
 public:
  using Elem = std::uint32_t;

  /// @brief Returns the interned field F_{p^k}.
  static const FiniteField& get(unsigned p, unsigned k = 1);

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  unsigned q() const { return q_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const {
    if (k_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_slow(a, b);
  }
  Elem neg(Elem a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_slow(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  /// @brief Multiplicative inverse; throws InvalidScalar on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const;

  /// @brief Image of an integer.
  Elem from_int(std::int64_t n) const;
  /// @brief Image of a BigInt.
  Elem from_bigint(const BigInt& n) const;
  /// @brief The reduction map pi; throws InvalidScalar if p divides the denominator.
  Elem reduce(const DScalar& x) const;
  Elem reduce(const Exponent& x) const;

  /// @brief Reduced binomial binom(alpha, i) mod p (cached).
  Elem binom(const Exponent& alpha, unsigned i) const;

  /// @brief Some square root, chosen deterministically as the smallest encoding.
  std::optional<Elem> sqrt(Elem a) const;
  /// @brief All square roots (0, 1 or 2 values) in increasing encoding.
  std::vector<Elem> sqrts(Elem a) const;
  /// @brief A primitive T-th root of unity, smallest encoding, if one exists.
  std::optional<Elem> primitive_root_of_unity(unsigned T) const;

  /// @brief True when a lies in the prime subfield.
  bool in_prime_field(Elem a) const { return a < p_; }

  /// @brief Human readable form: residues for k = 1, polynomials in w otherwise.
  std::string format(Elem a) const;

  /// @brief Coefficients of the defining polynomial (low degree first, monic).
  const std::vector<unsigned>& modulus() const { return modulus_; }

  FiniteField(const FiniteField&) = delete;
  FiniteField& operator=(const FiniteField&) = delete;

 private:
  FiniteField(unsigned p, unsigned k);
  Elem add_slow(Elem a, Elem b) const;
  Elem neg_slow(Elem a) const;
  std::vector<unsigned> digits(Elem a) const;
  Elem from_digits(const std::vector<unsigned>& d) const;
  Elem poly_mul(Elem a, Elem b) const;

  unsigned p_;
  unsigned k_;
  unsigned q_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

/// @brief A field element bundled with its field.
class Fq {
 public:
  using Elem = FiniteField::Elem;

  Fq() = default;
  Fq(const FiniteField& f, Elem v) : f_(&f), v_(v) {}
  static Fq from_int(const FiniteField& f, std::int64_t n) { return Fq(f, f.from_int(n)); }

  const FiniteField& field() const { return *f_; }
  Elem value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Fq operator+(const Fq& o) const { return Fq(*f_, f_->add(v_, o.v_)); }
  Fq operator-(const Fq& o) const { return Fq(*f_, f_->sub(v_, o.v_)); }
  Fq operator*(const Fq& o) const { return Fq(*f_, f_->mul(v_, o.v_)); }
  Fq operator/(const Fq& o) const { return Fq(*f_, f_->div(v_, o.v_)); }
  Fq operator-() const { return Fq(*f_, f_->neg(v_)); }
  Fq& operator+=(const Fq& o) { v_ = f_->add(v_, o.v_); return *this; }
  Fq& operator-=(const Fq& o) { v_ = f_->sub(v_, o.v_); return *this; }
  Fq& operator*=(const Fq& o) { v_ = f_->mul(v_, o.v_); return *this; }
  bool operator==(const Fq& o) const { return v_ == o.v_; }
  bool operator!=(const Fq& o) const { return v_ != o.v_; }
  Fq pow(std::uint64_t n) const { return Fq(*f_, f_->pow(v_, n)); }
  Fq inv() const { return Fq(*f_, f_->inv(v_)); }

  std::string to_string() const { return f_->format(v_); }

 private:
  const FiniteField* f_ = nullptr;
  Elem v_ = 0;
};

/// @brief Reduces a rational into F_p; the standalone form of the reduction map.
Fq reduce(const DScalar& a, unsigned p);

}  // namespace modzhu
