#include "modzhu/expr.hpp"

#include <stdexcept>

namespace modzhu {

ExprPtr Expr::node(Kind kind, DScalar value, unsigned k, std::vector<ExprPtr> args) {
  return ExprPtr(new Expr(kind, std::move(value), k, std::move(args)));
}

ExprPtr Expr::lit(const DScalar& v) { return node(Kind::Literal, v, 0, {}); }
ExprPtr Expr::m() { return node(Kind::VarM, 0, 0, {}); }
ExprPtr Expr::n() { return node(Kind::VarN, 0, 0, {}); }
ExprPtr Expr::add(ExprPtr a, ExprPtr b) { return node(Kind::Add, 0, 0, {std::move(a), std::move(b)}); }
ExprPtr Expr::sub(ExprPtr a, ExprPtr b) { return node(Kind::Sub, 0, 0, {std::move(a), std::move(b)}); }
ExprPtr Expr::mul(ExprPtr a, ExprPtr b) { return node(Kind::Mul, 0, 0, {std::move(a), std::move(b)}); }

ExprPtr Expr::neg(ExprPtr a) {
  if (a->kind() == Kind::Literal) return lit(-a->value());
  return node(Kind::Neg, 0, 0, {std::move(a)});
}

ExprPtr Expr::binom(ExprPtr a, unsigned k) { return node(Kind::Binom, 0, k, {std::move(a)}); }
ExprPtr Expr::delta(ExprPtr a) { return node(Kind::Delta, 0, 0, {std::move(a)}); }

DScalar Expr::eval(const DScalar& m, const DScalar& n) const {
  switch (kind_) {
    case Kind::Literal: return value_;
    case Kind::VarM: return m;
    case Kind::VarN: return n;
    case Kind::Add: return args_[0]->eval(m, n) + args_[1]->eval(m, n);
    case Kind::Sub: return args_[0]->eval(m, n) - args_[1]->eval(m, n);
    case Kind::Mul: {
      DScalar a = args_[0]->eval(m, n);
      if (a == 0) return a;
      return a * args_[1]->eval(m, n);
    }
    case Kind::Neg: return -args_[0]->eval(m, n);
    case Kind::Binom: return modzhu::binom(args_[0]->eval(m, n), k_);
    case Kind::Delta: return args_[0]->eval(m, n) == 0 ? DScalar(1) : DScalar(0);
  }
  throw std::logic_error("unknown expression kind");
}

bool Expr::equals(const Expr& o) const {
  if (kind_ != o.kind_ || k_ != o.k_ || args_.size() != o.args_.size()) return false;
  if (kind_ == Kind::Literal && value_ != o.value_) return false;
  for (std::size_t i = 0; i < args_.size(); ++i)
    if (!args_[i]->equals(*o.args_[i])) return false;
  return true;
}

bool Expr::depends_on_modes() const {
  if (kind_ == Kind::VarM || kind_ == Kind::VarN) return true;
  for (const auto& a : args_)
    if (a->depends_on_modes()) return true;
  return false;
}

int Expr::precedence() const {
  switch (kind_) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul: return 2;
    case Kind::Neg: return 3;
    case Kind::Literal: return value_ < 0 ? 3 : 4;
    default: return 4;
  }
}

std::string Expr::print() const { return print_at(0); }

std::string Expr::print_at(int min_prec) const {
  std::string s;
  switch (kind_) {
    case Kind::Literal: s = format_dscalar(value_); break;
    case Kind::VarM: s = "m"; break;
    case Kind::VarN: s = "n"; break;
    case Kind::Add: s = args_[0]->print_at(1) + " + " + args_[1]->print_at(2); break;
    case Kind::Sub: s = args_[0]->print_at(1) + " - " + args_[1]->print_at(2); break;
    case Kind::Mul: s = args_[0]->print_at(2) + " * " + args_[1]->print_at(3); break;
    case Kind::Neg: s = "-" + args_[0]->print_at(4); break;
    case Kind::Binom: s = "binom(" + args_[0]->print_at(0) + ", " + std::to_string(k_) + ")"; break;
    case Kind::Delta: s = "delta(" + args_[0]->print_at(0) + ")"; break;
  }
  if (precedence() < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace modzhu
