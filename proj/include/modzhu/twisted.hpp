#pragma once

/// @file twisted.hpp
/// @brief Twisted modules: the bottom functor Omega, twisted Verma modules over
/// a bottom, Ramond lowest-weight modules, radical quotients, the NS0 parameter
/// count, and the Clifford twisted modules V^+ and V^-.

#include "modzhu/zhu.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modzhu {

/// @brief Raised when a bottom module violates the degree-zero relations.
class InconsistentBottomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief The same presentation over the extension F_{p^k}.
Presentation extend_field(const Presentation& P, unsigned k);

/// @brief Omega(M): the joint kernel of all lowering generator modes within the window.
///
/// Every mode u_n with n > deg u - 1 of a composite state is a combination of
/// products of generator modes containing a lowering one, so generator modes
/// suffice.
GradedSubspace omega(const GradedModule& M);

/// @brief A finite-dimensional bottom: matrices of the degree-zero generator modes.
struct BottomModule {
  std::size_t dim = 1;
  std::vector<int> parity;
  /// Keyed by generator index of the twisted presentation.
  std::map<int, Matrix> action;
};

/// @brief Result of the twisted Verma construction.
struct TwistedVerma {
  std::shared_ptr<InducedModule> induced;
  std::shared_ptr<QuotientModule> module;
  /// Number of associativity coefficients compared.
  std::size_t defects_checked = 0;
  /// Dimension of the span of nonzero defects.
  std::size_t defect_rank = 0;
};

/// @brief Checks the degree-zero brackets on U; returns a failure naming the first violated pair.
CheckResult bottom_consistency(const Presentation& P, const std::vector<Elem>& central_values, const BottomModule& U);

/// @brief M(U) modulo the associativity defects of the g-twisted V-module structure.
///
/// Builds the module induced from U over the twisted mode algebra P, computes
/// the Borcherds defects sum_i binom(p,i) (u_{r+i} v)_{p+q-i} w minus the two
/// iterated sums for generator states u, v of V, basis states w within the
/// cutoff, p, q in the twist cosets and 0 <= r <= deg u + deg v, and quotients
/// by the submodule they generate.  Throws InconsistentBottomError when U
/// violates a degree-zero bracket or a defect lands in degree zero.
TwistedVerma twisted_verma(std::shared_ptr<const InducedModule> V, const Presentation& P,
                           const std::vector<Elem>& central_values, const std::vector<int>& gen_map,
                           const BottomModule& U, const Exponent& cutoff);

/// @brief The Ramond Verma module M(h, c) with F_0 v = root v over the field of the presentation.
///
/// Throws ParameterError unless root^2 = h - c/24.
std::shared_ptr<InducedModule> ramond_verma(const Presentation& ramond_presentation, Elem h, Elem c, Elem root,
                                            const Exponent& cutoff);

/// @brief Radical quotient of a module generated by its degree-zero part.
struct SimpleQuotient {
  /// The largest graded submodule meeting degree zero trivially, through the cutoff.
  GradedSubspace radical;
  std::shared_ptr<QuotientModule> module;
  /// A basis of Omega(M) above degree zero.
  std::vector<SparseVec> singular_vectors;
};

/// @brief M / J where J_n = {w in M_n : x w in J for every lowering generator mode x}, J_0 = 0.
///
/// This is the simple quotient L(U) through the cutoff when U is simple.
SimpleQuotient simple_quotient(ModulePtr M);

/// @brief A parameter (h, y) of an irreducible sigma-twisted V^0_NS module: [omega] = h, [tau] = y.
struct NsParameter {
  Elem h = 0;
  /// Root of y^2 = h - c/24 in F_{p^2}.
  Elem root = 0;
};

/// @brief All (h, y) with h in F_p and y^2 = h - c/24 in F_{p^2}; requires p > 3.
std::vector<NsParameter> count_ns0_irreducibles(Elem c, unsigned p);

/// @brief Generators (L_{-n}^p - delta_{p|n} L_{-np}) 1, n >= 2, of the ideal I_0 of
/// the NS vacuum module that lie within its cutoff.
std::vector<SparseVec> ns_restricted_ideal_generators(const InducedModule& V);

/// @brief Case of the map phi from the untwisted to the twisted Clifford affinization.
enum class CliffordCase { kOddOrder, kEvenHyperbolic, kEvenWithExtra };

/// @brief The map phi from g^ to g^[tau] for an odd abelian g with a form and a diagonal tau.
///
/// tau is given by exponents i/T per basis vector.  The form restricted to the
/// eigenspace g_{T/2} must be in normal form: hyperbolic pairs h, h* with
/// <h, h*> = 1 and at most one e with <e, e> = 2.
class CliffordPhi {
 public:
  CliffordPhi(const FiniteField& f, const Matrix& form, std::vector<unsigned> eigen_index, unsigned T);

  const Presentation& untwisted() const { return untwisted_; }
  const Presentation& twisted() const { return twisted_; }
  CliffordCase kind() const { return kind_; }
  unsigned order() const { return T_; }
  /// @brief Twisted generator of e, if the T/2 eigenspace has odd dimension.
  std::optional<int> extra() const { return extra_; }
  /// @brief Indices of the h and h* generators.
  const std::vector<std::pair<int, int>>& hyperbolic_pairs() const { return pairs_; }

  ModeIndex map(const ModeIndex& x) const;
  LieElement map(const LieElement& x) const;
  /// @brief Twisted modes phi(a_n) with n >= 0 whose degree lies in [-window, 0].
  std::vector<ModeIndex> annihilators(const Exponent& window) const;
  /// @brief Compares [phi x, phi y] with phi [x, y] for all modes with |n| <= range.
  CheckResult homomorphism_check(int range) const;

 private:
  Presentation untwisted_;
  Presentation twisted_;
  std::vector<Exponent> exponent_;
  unsigned T_;
  CliffordCase kind_ = CliffordCase::kOddOrder;
  std::optional<int> extra_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> role_;
};

/// @brief V^+ (sign = +1) or V^- (sign = -1): the twisted module on which e_{-1/2}
/// acts on the vacuum by sign * alpha, with alpha^2 = level.  Without e, sign is ignored.
std::shared_ptr<InducedModule> clifford_module(const CliffordPhi& phi, Elem level, Elem alpha, int sign,
                                               const Exponent& cutoff);

/// @brief Checks that the untwisted vacuum module, with v acting as phi^{-1}(v)
/// and e_{-1/2} as sign * alpha * (-1)^parity, matches clifford_module on all
/// window modes and basis states within the cutoff.
CheckResult clifford_pullback_check(const CliffordPhi& phi, Elem level, Elem alpha, int sign, const Exponent& cutoff);

/// @brief Multiplicities of the irreducible summands of a twisted Clifford module.
struct CliffordDecomposition {
  /// Dimension of Omega_W through the cutoff.
  std::size_t omega_dim = 0;
  /// (V+, V-) in the case with e; (V, 0) otherwise.
  std::size_t plus = 0;
  std::size_t minus = 0;
  /// Degrees of the vectors of Omega_W.
  std::vector<Exponent> omega_degrees;
};

/// @brief Omega_W = joint kernel of phi(a_n), n >= 0, split by (alpha + e_{-1/2}) and (alpha - e_{-1/2}).
CliffordDecomposition decompose(const GradedModule& M, const CliffordPhi& phi, Elem alpha);

}  // namespace modzhu
