#pragma once

/// @file lie.hpp
/// @brief Half-integer graded Lie superalgebras presented by generators with
/// mode-dependent structure constants.

#include "modzhu/expr.hpp"
#include "modzhu/linalg.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace modzhu {

/// @brief Raised for ill-formed presentations or off-lattice modes.
class PresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief Raised for an invalid automorphism (wrong order, p | T, missing roots).
class TwistError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// @brief One generating field X with modes X_M.
///
/// The mode X_M has degree offset - M.  Allowed modes are lattice + Z.  The
/// field of X is written Y(x, z) = sum X_M z^{-M + offset - weight} on the
/// module described by the presentation, so the state x is X_{offset-weight}
/// applied to the lowest vector and twist is the exponent of the automorphism
/// eigenvalue on x (twist = lattice - offset + weight - 1 modulo 1).
struct Generator {
  std::string name;
  int parity = 0;
  Exponent weight;
  Exponent offset;
  Exponent lattice;
  Exponent twist;

  /// @brief Mode producing the state of the generator from the vacuum.
  Exponent state_mode() const { return offset - weight; }
  bool operator==(const Generator& o) const {
    return name == o.name && parity == o.parity && weight == o.weight && offset == o.offset &&
           lattice == o.lattice && twist == o.twist;
  }
};

/// @brief A term scale * coef(m, n) * X_target[mode(m, n)].
struct GenTerm {
  Elem scale = 1;
  ExprPtr coef;
  int target = 0;
  ExprPtr mode;
};

/// @brief A term scale * coef(m, n) * central.
struct CentralTerm {
  Elem scale = 1;
  ExprPtr coef;
  int central = 0;
};

/// @brief The bracket [X^first_m, X^second_n] with first <= second.
struct BracketRule {
  int first = 0;
  int second = 0;
  std::vector<GenTerm> gen_terms;
  std::vector<CentralTerm> central_terms;
};

/// @brief A basis element X_M of the presented algebra.
struct ModeIndex {
  int gen = 0;
  Exponent mode;
  auto key() const { return std::make_tuple(gen, mode.numerator(), mode.denominator()); }
  bool operator<(const ModeIndex& o) const {
    if (gen != o.gen) return gen < o.gen;
    return mode < o.mode;
  }
  bool operator==(const ModeIndex& o) const { return gen == o.gen && mode == o.mode; }
};

/// @brief Finite linear combination of modes and central elements.
struct LieElement {
  std::map<ModeIndex, Elem> modes;
  std::map<int, Elem> central;

  bool is_zero() const { return modes.empty() && central.empty(); }
  void add(const FiniteField& f, const ModeIndex& x, Elem c);
  void add_central(const FiniteField& f, int k, Elem c);
  void add(const FiniteField& f, const LieElement& o, Elem c);
  bool operator==(const LieElement& o) const { return modes == o.modes && central == o.central; }
};

/// @brief Outcome of a verification with a readable witness on failure.
struct CheckResult {
  bool ok = true;
  std::string detail;
};

/// @brief A Lie superalgebra presentation.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::string name, const FiniteField& field) : name_(std::move(name)), field_(&field) {}
  Presentation(const Presentation& o);
  Presentation& operator=(const Presentation& o);

  const std::string& name() const { return name_; }
  const FiniteField& field() const { return *field_; }
  unsigned prime() const { return field_->p(); }

  int add_generator(Generator g);
  int add_central(std::string name);
  /// @brief Sets the rule for a pair; the pair is stored with first <= second.
  void set_bracket(BracketRule rule);

  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<std::string>& centrals() const { return centrals_; }
  const std::map<std::pair<int, int>, BracketRule>& rules() const { return rules_; }
  std::optional<int> find_generator(const std::string& name) const;
  std::optional<int> find_central(const std::string& name) const;

  int parity(int gen) const { return gens_[gen].parity; }
  Exponent degree(const ModeIndex& x) const { return gens_[x.gen].offset - x.mode; }
  bool on_lattice(const ModeIndex& x) const;
  /// @brief Throws PresentationError when the mode is off the generator lattice.
  void require_lattice(const ModeIndex& x) const;

  /// @brief [x, y] with reduced coefficients; cached.
  const LieElement& bracket(const ModeIndex& x, const ModeIndex& y) const;
  /// @brief Bilinear extension; central elements bracket to zero.
  LieElement bracket(const LieElement& x, const LieElement& y) const;

  /// @brief Checks the lattice/twist relation, targets on lattice, degree
  /// additivity and super skew symmetry at sample modes.  Throws on failure.
  void validate(int sample_range = 3) const;

  /// @brief Structural equality of generators, centrals and rule ASTs.
  bool operator==(const Presentation& o) const;

  std::string format_mode(const ModeIndex& x) const;
  std::string format(const LieElement& x) const;

 private:
  LieElement evaluate_rule(const BracketRule& r, const ModeIndex& a, const ModeIndex& b) const;

  std::string name_;
  const FiniteField* field_ = nullptr;
  std::vector<Generator> gens_;
  std::vector<std::string> centrals_;
  std::map<std::pair<int, int>, BracketRule> rules_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::tuple<int, std::int64_t, std::int64_t, int, std::int64_t, std::int64_t>, LieElement>
      cache_;
};

/// @brief The element x as a LieElement.
LieElement lie_mode(const ModeIndex& x);

/// @brief Converts an exact rational to an exponent; throws if it does not fit.
Exponent to_exponent(const DScalar& x);

/// @brief Checks (-1)^{|x||z|}[x,[y,z]] + cyclic = 0.
CheckResult super_jacobi_check(const Presentation& P, const ModeIndex& x, const ModeIndex& y,
                               const ModeIndex& z);

/// @brief p-mapping on even modes: (X_M)^{[p]} = sum c_Y Y_{pM}, optionally only when p | M.
struct PMapRule {
  std::vector<std::pair<int, Elem>> images;
  bool divisible_only = false;
};

/// @brief A p-mapping given generator by generator; central elements map to themselves.
struct PMapping {
  std::map<int, PMapRule> rules;
  LieElement apply(const Presentation& P, const ModeIndex& x) const;
};

/// @brief Verifies (ad x)^p (t) = [x^{[p]}, t] for every target t.
CheckResult restrictedness_check(const Presentation& P, const ModeIndex& x,
                                 const std::vector<ModeIndex>& targets, const PMapping& pmap);

/// @brief Finite-dimensional Lie superalgebra with an even symmetric form.
struct FiniteLieSuperalgebra {
  const FiniteField* field = nullptr;
  std::vector<std::string> names;
  std::vector<int> parity;
  /// structure[i][j][k]: coefficient of basis k in [b_i, b_j].
  std::vector<std::vector<std::vector<Elem>>> structure;
  Matrix form;

  FiniteLieSuperalgebra() = default;
  FiniteLieSuperalgebra(const FiniteField& f, std::vector<std::string> names, std::vector<int> parity);
  int dim() const { return static_cast<int>(names.size()); }
  /// @brief Sets [b_i, b_j] = sum c_k b_k and the reverse bracket by super skew symmetry.
  void set_bracket(int i, int j, const std::vector<std::pair<int, Elem>>& value);
  void set_form(int i, int j, Elem v);
  std::vector<Elem> bracket(const std::vector<Elem>& a, const std::vector<Elem>& b) const;
  /// @brief Super skew symmetry, super Jacobi, [odd, odd] = 0, symmetry of the form and
  /// invariance under even elements: <[a,u],v> = -<u,[a,v]>.
  CheckResult validate() const;
};

/// @brief An eigenspace of an automorphism of finite order.
struct Eigenspace {
  unsigned index = 0;
  Elem eigenvalue = 0;
  /// Basis vectors as columns.
  Matrix basis;
};

/// @brief Splits g into eigenspaces g_i = {a : tau a = eta^i a}.
std::vector<Eigenspace> twist_decompose(const FiniteLieSuperalgebra& g, const Matrix& tau, unsigned T);

/// @brief The algebra rewritten in a new basis (columns of B), with names.
FiniteLieSuperalgebra change_basis(const FiniteLieSuperalgebra& g, const Matrix& B,
                                   std::vector<std::string> names);

/// @brief Result of building a twisted loop algebra on an eigenbasis.
struct TwistedLoop {
  FiniteLieSuperalgebra eigen_algebra;
  Matrix basis;
  std::vector<Exponent> exponents;
};

/// @brief Eigenbasis of tau with homogeneous parities and exponents i / T.
TwistedLoop eigenbasis(const FiniteLieSuperalgebra& g, const Matrix& tau, unsigned T);

/// @brief Neveu-Schwarz algebra: L, G (lattice 1/2) and central c.
Presentation neveu_schwarz(unsigned p);
/// @brief Ramond algebra: L, F (integral modes, twist 1/2) and central c.
Presentation ramond(unsigned p);
/// @brief Affinization of g with central k; requires [odd, odd] = 0.
Presentation affine(const FiniteLieSuperalgebra& g, const std::string& name = "affine");
/// @brief Loop algebra on generators with given lattices; twist = lattice.
Presentation loop_algebra(const FiniteLieSuperalgebra& g, const std::vector<Exponent>& lattices,
                          const std::string& name);
/// @brief Twisted affinization on the eigenbasis of tau.
Presentation twisted_affine(const FiniteLieSuperalgebra& g, const Matrix& tau, unsigned T,
                            const std::string& name = "twisted_affine");
/// @brief Affinization of the odd abelian algebra U of dimension d with form.
Presentation clifford_affine(const FiniteField& f, const Matrix& form, const std::string& name = "clifford");

/// @brief p-mapping of the NS algebra: (L_m)^{[p]} = delta_{p|m} L_{mp}.
PMapping ns_pmapping(const Presentation& ns);

}  // namespace modzhu
