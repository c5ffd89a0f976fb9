#pragma once

/// @file zhu.hpp
/// @brief Twisted Zhu algebras A_g(V) = V / O_g(V) of vacuum modules, computed
/// degreewise within a cutoff, and relation discovery in chosen generators.

#include "modzhu/vertex.hpp"

#include <memory>
#include <string>
#include <vector>

namespace modzhu {

/// @brief An automorphism g of finite order acting diagonally on the generators of V.
///
/// theta[i] in [0, 1) is the exponent of the eigenvalue of g on generator i,
/// so that g-twisted modules have generator twists theta.  The composite g
/// sigma has exponents theta[i] + parity[i] / 2 modulo 1.  T and T0 are the
/// orders of g and g sigma, computed from these exponents.
struct TwistData {
  std::vector<Exponent> theta;
  std::vector<Exponent> star;
  unsigned T = 1;
  unsigned T0 = 1;

  /// @brief Exponent r / T of g on a monomial state, modulo 1.
  Exponent g_exponent(const InducedModule& V, StateId s) const;
  /// @brief Exponent r / T0 of g sigma on a monomial state, modulo 1.
  Exponent star_exponent(const InducedModule& V, StateId s) const;
};

/// @brief Builds twist data; throws TwistError when p divides T or T0.
TwistData make_twist(const Presentation& P, std::vector<Exponent> theta);

/// @brief g = sigma, the parity automorphism.
TwistData parity_twist(const Presentation& P);

/// @brief A_g(V) truncated at degree D: normal forms modulo O_g(V) within V_{<=D}.
///
/// O_g(V) is approximated by the span of all a o_g^n b with a, b basis states
/// and top degree at most D, together with optional extra vectors (an ideal of
/// V, for quotients of V).  Relations found this way hold through degree D.
class ZhuAlgebra {
 public:
  /// @param self V acting on itself; V must have cutoff at least D.
  ZhuAlgebra(std::shared_ptr<const VertexAction> self, TwistData twist, const Exponent& D,
             const std::vector<SparseVec>& extra = {});

  const VertexAction& action() const { return *self_; }
  const InducedModule& algebra() const { return self_->algebra(); }
  const TwistData& twist() const { return twist_; }
  const Exponent& cutoff() const { return D_; }
  const FiniteField& field() const { return algebra().field(); }

  /// @brief u o_g^n v, extended linearly over homogeneous parts of u.
  SparseVec circle(const SparseVec& u, const SparseVec& v, unsigned n) const;
  /// @brief Res_z (1+z)^{deg u + m} / z^{2+n} Y(u, z) v for u in V^{0*}, and
  /// (1+z)^{deg u - 1 + r/T0 + m} / z^{1+n} for u in V^{r*}.
  SparseVec shifted_circle(const SparseVec& u, const SparseVec& v, unsigned m, unsigned n) const;
  /// @brief u *_g v, extended linearly.
  SparseVec star(const SparseVec& u, const SparseVec& v) const;
  /// @brief Res_z (1+z)^{deg u - 1} Y(u, z) v = sum_i binom(deg u - 1, i) u_i v.
  SparseVec commutator_residue(const SparseVec& u, const SparseVec& v) const;
  /// @brief Normal form modulo O_g(V).
  SparseVec reduce(const SparseVec& v) const;
  /// @brief Product of classes: reduce(star).
  SparseVec product(const SparseVec& x, const SparseVec& y) const;
  /// @brief Super bracket of classes of homogeneous parity.
  SparseVec bracket(const SparseVec& x, const SparseVec& y) const;
  /// @brief Basis states that are not pivots of O_g(V): a basis of A_g(V)_{<=D}.
  std::vector<StateId> quotient_basis() const;
  const Echelon& o_space() const { return O_; }
  /// @brief Number of spanning vectors inserted into the echelon.
  std::size_t generated() const { return generated_; }
  std::string format(const SparseVec& v) const { return algebra().format(v); }

 private:
  SparseVec circle_state(StateId u, const SparseVec& v, unsigned m, unsigned n) const;
  Exponent top_degree(StateId u, const Exponent& dv, unsigned n) const;

  std::shared_ptr<const VertexAction> self_;
  TwistData twist_;
  Exponent D_;
  Echelon O_;
  std::size_t generated_ = 0;
};

/// @brief A named generator of A_g(V) given by a homogeneous representative.
struct ZhuGenerator {
  std::string name;
  SparseVec vector;
};

/// @brief A word in the generators, as generator indices.
using Word = std::vector<int>;

/// @brief A relation sum c_w w = 0 with leading word first and coefficient 1.
struct ZhuRelation {
  std::vector<std::pair<Word, Elem>> terms;
  std::string text;
};

/// @brief Relations among generators of A_g(V) through the cutoff.
struct RelationsReport {
  std::vector<ZhuRelation> relations;
  std::size_t words = 0;
  std::size_t quotient_dim = 0;
  std::size_t image_rank = 0;
  bool spanning = false;
  std::vector<std::string> unreached;
};

/// @brief Degree of a word.
Exponent word_degree(const std::vector<ZhuGenerator>& gens, const ZhuAlgebra& Z, const Word& w);

/// @brief Prints a word such as x^2*y.
std::string format_word(const std::vector<ZhuGenerator>& gens, const Word& w);

/// @brief Evaluates words of degree at most the cutoff as right-nested products
/// and returns the reduced Groebner basis of the kernel within the cutoff.
///
/// Words are ordered by degree, then lexicographically with earlier generators
/// larger; a relation's leading word is its largest word.  Only relations whose
/// leading word contains no other leading word are returned.
RelationsReport relations_report(const ZhuAlgebra& Z, const std::vector<ZhuGenerator>& gens);

/// @brief Checks that every class of A_g(V)_{<=D} lies in the span of the evaluated words.
CheckResult spanning_check(const ZhuAlgebra& Z, const std::vector<ZhuGenerator>& gens,
                           const std::vector<Word>& words);

/// @brief Checks reduce(shifted_circle(u, v, m, n)) = 0.
CheckResult shifted_residue_check(const ZhuAlgebra& Z, const SparseVec& u, const SparseVec& v, unsigned m,
                                  unsigned n);

/// @brief Checks D^(n) u = binom(-deg u, n) u modulo O_g(V).
CheckResult d_congruence_check(const ZhuAlgebra& Z, const SparseVec& u, unsigned n);

/// @brief Checks that w * (a o b) and (a o b) * w reduce to zero.
CheckResult ideal_check(const ZhuAlgebra& Z, const SparseVec& a, const SparseVec& b, unsigned n, const SparseVec& w);

/// @brief Checks ([x][y])[z] = [x]([y][z]).
CheckResult associativity_check(const ZhuAlgebra& Z, const SparseVec& x, const SparseVec& y, const SparseVec& z);

/// @brief Checks that the bracket of classes equals the class of sum_i binom(deg a - 1, i) a_i b.
CheckResult vg_zero_bracket_check(const ZhuAlgebra& Z, const SparseVec& a, const SparseVec& b);

}  // namespace modzhu
