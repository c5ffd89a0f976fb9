#pragma once

/// @file formal_calculus.hpp
/// @brief Sparse formal distributions with rational exponents, Hasse
/// derivatives, binomial expansions, delta functions and residues.

#include "modzhu/linalg.hpp"
#include "modzhu/scalars.hpp"

#include <map>
#include <optional>
#include <utility>

namespace modzhu {

/// @brief Closed range of exponents on which coefficients are trusted.
///
/// A missing bound means the series is known exactly in that direction.
struct Window {
  std::optional<Exponent> lo;
  std::optional<Exponent> hi;

  bool contains(const Exponent& e) const {
    return (!lo || e >= *lo) && (!hi || e <= *hi);
  }
  /// @brief Window shifted by d at both ends.
  Window shifted(const Exponent& d) const;
  /// @brief Intersection of two windows.
  Window meet(const Window& o) const;
  bool exact() const { return !lo && !hi; }
};

/// @brief A one-variable formal distribution sum_alpha f(alpha) z^alpha.
class Distribution {
 public:
  explicit Distribution(const FiniteField& f) : f_(&f) {}
  static Distribution monomial(const FiniteField& f, const Exponent& alpha, Elem c = 1);

  const FiniteField& field() const { return *f_; }
  const std::map<Exponent, Elem>& terms() const { return terms_; }
  const Window& window() const { return window_; }
  void set_window(Window w) { window_ = std::move(w); }

  /// @brief Coefficient at alpha; throws TruncationError outside the window.
  Elem coefficient(const Exponent& alpha) const;
  void add_term(const Exponent& alpha, Elem c);

  Distribution operator+(const Distribution& o) const;
  Distribution scaled(Elem c) const;
  bool operator==(const Distribution& o) const;

 private:
  const FiniteField* f_;
  std::map<Exponent, Elem> terms_;
  Window window_;
};

/// @brief Expansion direction of a two-variable series.
enum class Direction {
  ExpandInSecond,  ///< nonnegative powers of the second variable
  ExpandInFirst,   ///< nonnegative powers of the first variable
  Undirected       ///< valid in either expansion (delta functions, polynomials)
};

/// @brief Raised when arithmetic mixes the two expansion directions.
class DirectionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// @brief Two-variable series sum c(a,b) z1^a z2^b with a direction tag.
class BivariateSeries {
 public:
  using Key = std::pair<Exponent, Exponent>;

  BivariateSeries(const FiniteField& f, Direction d) : f_(&f), dir_(d) {}

  const FiniteField& field() const { return *f_; }
  Direction direction() const { return dir_; }
  const std::map<Key, Elem>& terms() const { return terms_; }
  const Window& window1() const { return w1_; }
  const Window& window2() const { return w2_; }
  void set_windows(Window w1, Window w2) {
    w1_ = std::move(w1);
    w2_ = std::move(w2);
  }

  /// @brief Coefficient of z1^a z2^b; throws TruncationError outside the windows.
  Elem coefficient(const Exponent& a, const Exponent& b) const;
  void add_term(const Exponent& a, const Exponent& b, Elem c);

  /// @brief Sum; rejects opposite expansion directions.
  BivariateSeries operator+(const BivariateSeries& o) const;
  BivariateSeries scaled(Elem c) const;
  /// @brief Product with a series whose windows are exact (a polynomial).
  BivariateSeries times_polynomial(const BivariateSeries& poly) const;
  /// @brief Hasse derivative in the second variable.
  BivariateSeries hasse2(unsigned k) const;
  /// @brief True when all stored coefficients inside the windows vanish.
  bool is_zero_on_window() const;

 private:
  const FiniteField* f_;
  Direction dir_;
  std::map<Key, Elem> terms_;
  Window w1_, w2_;
};

/// @brief Which variable a residue is taken in.
enum class Variable { First, Second };

/// @brief Hasse derivative d^{(k)} z^alpha = binom(alpha,k) z^{alpha-k}.
Distribution hasse(unsigned k, const Distribution& f);

/// @brief (z1 + s z2)^alpha expanded in the given direction up to depth terms, s = +-1.
BivariateSeries binomial_expand(const FiniteField& f, const Exponent& alpha, Direction dir,
                                unsigned depth, int sign = 1);

/// @brief sum_{n<=depth} x^n d_z^{(n)} f(z), as a series in (z, x) expanded in x.
BivariateSeries translate(const Distribution& f, unsigned depth);

/// @brief iota_12 s - iota_21 s for two expansions of the same function.
BivariateSeries expansion_difference(const BivariateSeries& a, const BivariateSeries& b);

/// @brief d_{z2}^{(n)} z1^{-1} delta(z2/z1) on the exponent window [-depth, depth].
BivariateSeries delta_derivative(const FiniteField& f, unsigned n, unsigned depth);

/// @brief (z1 - z2)^m d_{z2}^{(n)} z1^{-1} delta(z2/z1) on the window [-depth, depth].
BivariateSeries delta_derivative_product(const FiniteField& f, unsigned m, unsigned n,
                                         unsigned depth);

/// @brief Checks that (z1 - z2)^m d^{(n)} delta vanishes on the window; requires m > n.
bool delta_derivative_annihilation(const FiniteField& f, unsigned m, unsigned n, unsigned depth);

/// @brief Rank of the coefficient matrix of {d_{z2}^{(j)} z2^{-1}(z1/z2)^alpha delta(z1/z2)}_{j<=n},
/// columns indexed by the z1 exponent over [-depth, depth].
std::size_t delta_derivative_rank(const FiniteField& f, unsigned n, const Exponent& alpha,
                                  unsigned depth);

/// @brief Coefficient of z^{-1}; throws TruncationError if -1 is outside the window.
Elem residue(const Distribution& f);

/// @brief Coefficient of the (-1)-power of the chosen variable, as a distribution in the other.
Distribution residue(const BivariateSeries& s, Variable v);

}  // namespace modzhu
