#pragma once

/// @file expr.hpp
/// @brief Small expression trees for mode-dependent structure constants.
///
/// Grammar: rational literals, the mode variables m and n, + - *,
/// parentheses, binom(expr, natural) and delta(expr) (Kronecker delta at 0).

#include "modzhu/scalars.hpp"

#include <memory>
#include <string>
#include <vector>

namespace modzhu {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// @brief Immutable expression node.
class Expr {
 public:
  enum class Kind { Literal, VarM, VarN, Add, Sub, Mul, Neg, Binom, Delta };

  static ExprPtr lit(const DScalar& v);
  static ExprPtr lit(long num, long den = 1) { return lit(DScalar(num, den)); }
  static ExprPtr m();
  static ExprPtr n();
  static ExprPtr add(ExprPtr a, ExprPtr b);
  static ExprPtr sub(ExprPtr a, ExprPtr b);
  static ExprPtr mul(ExprPtr a, ExprPtr b);
  /// @brief Negation; folds into literals so that -3 is a single literal.
  static ExprPtr neg(ExprPtr a);
  static ExprPtr binom(ExprPtr a, unsigned k);
  static ExprPtr delta(ExprPtr a);

  Kind kind() const { return kind_; }
  const DScalar& value() const { return value_; }
  unsigned order() const { return k_; }
  const std::vector<ExprPtr>& args() const { return args_; }

  /// @brief Exact value at the given modes.
  DScalar eval(const DScalar& m, const DScalar& n) const;
  /// @brief Structural equality.
  bool equals(const Expr& o) const;
  /// @brief Canonical text; parsing it back yields a structurally equal tree.
  std::string print() const;
  /// @brief Canonical text, parenthesized when binding weaker than min_prec
  /// (1: sum, 2: product, 3: unary minus, 4: atom).
  std::string print_at(int min_prec) const;
  /// @brief Visits every literal.
  template <class F>
  void for_each_literal(F&& f) const {
    if (kind_ == Kind::Literal) f(*this);
    for (const auto& a : args_) a->for_each_literal(f);
  }
  /// @brief True when the tree mentions m or n.
  bool depends_on_modes() const;

 private:
  Kind kind_ = Kind::Literal;
  DScalar value_;
  unsigned k_ = 0;
  std::vector<ExprPtr> args_;
  Expr(Kind kind, DScalar value, unsigned k, std::vector<ExprPtr> args)
      : kind_(kind), value_(std::move(value)), k_(k), args_(std::move(args)) {}
  static ExprPtr node(Kind kind, DScalar value, unsigned k, std::vector<ExprPtr> args);
  int precedence() const;
};

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  return a->equals(*b);
}

}  // namespace modzhu
