#pragma once

/// @file vertex.hpp
/// @brief Vertex operator modes of arbitrary states of a vacuum module acting
/// on untwisted and twisted modules, the operators D^(k), and coefficient-wise
/// checks of locality, skew symmetry and the commutator formula.

#include "modzhu/pbw.hpp"

#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace modzhu {

/// @brief The action Y_W(u, x) = sum u_n x^{-n-1} of a vertex superalgebra V on a module W.
///
/// V is the vacuum module of a presentation; W is a module over a second
/// presentation whose generator gen_map[i] carries the field of V generator i.
/// The mode a_n of generator i acts on W as X_{n + 1 + offset - weight}, where
/// X, offset and weight belong to the W generator, so a_n is defined for n in
/// alpha + Z with alpha the fractional part of the W generator twist.  Modes
/// of composite states are computed recursively from the twisted iterate
/// formula, splitting a monomial state as u = a_m v along its first factor.
class VertexAction {
 public:
  VertexAction(std::shared_ptr<const InducedModule> V, ModulePtr W, std::vector<int> gen_map);
  /// @brief V acting on itself.
  static std::shared_ptr<VertexAction> on_self(std::shared_ptr<const InducedModule> V);

  const InducedModule& algebra() const { return *V_; }
  const GradedModule& module() const { return *W_; }
  const std::shared_ptr<const InducedModule>& algebra_ptr() const { return V_; }
  const ModulePtr& module_ptr() const { return W_; }
  const FiniteField& field() const { return V_->field(); }

  /// @brief The state x = X_{offset - weight} 1 of V generator i.
  SparseVec generator_state(int i) const;
  /// @brief Twist alpha in [0, 1) of V generator i on W.
  const Exponent& generator_twist(int i) const { return twist_.at(i); }
  /// @brief Sum of the twists of the factors of a monomial, modulo 1.
  Exponent twist_of(StateId u) const;
  /// @brief Common twist of the monomials of u; throws ParameterError when they differ.
  Exponent twist_of(const SparseVec& u) const;
  /// @brief Parity of a homogeneous vector of V; throws ParameterError otherwise.
  int parity_of(const SparseVec& u) const;
  /// @brief Degree of a homogeneous vector of V; throws ParameterError otherwise.
  Exponent degree_of(const SparseVec& u) const;
  /// @brief Vertex index m of a creation factor: the state a_m v has this factor in front.
  Exponent vertex_index(const ModeIndex& factor) const;

  /// @brief a_n w for V generator i.
  SparseVec generator_mode(int i, const Exponent& n, const SparseVec& w) const;
  /// @brief u_n w for a basis state u of V and a basis state w of W.
  SparseVec mode_act(StateId u, const Exponent& n, StateId w) const;
  /// @brief u_n w extended linearly; n must lie in twist_of(u) + Z.
  SparseVec mode_act(const SparseVec& u, const Exponent& n, const SparseVec& w) const;

 private:
  SparseVec compute(StateId u, const Exponent& n, StateId w) const;
  SparseVec act_states(StateId u, const Exponent& n, const SparseVec& w) const;

  std::shared_ptr<const InducedModule> V_;
  ModulePtr W_;
  std::vector<int> gen_map_;
  std::vector<Exponent> twist_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<std::tuple<StateId, std::int64_t, std::int64_t, StateId>, SparseVec> memo_;
};

/// @brief D^(k) v = v_{-k-1} 1 in V.
SparseVec d_operator(const VertexAction& self, unsigned k, const SparseVec& v);

/// @brief Outcome of a locality search.
struct LocalityResult {
  bool found = false;
  unsigned order = 0;
  std::string detail;
};

/// @brief Least k with sum_i binom(k, i) (-1)^i [u_{m+k-i}, v_{n+i}] = 0 on every
/// basis vector of W for |m|, |n| <= mode_range, searching k <= k_max.
///
/// Coefficients whose evaluation leaves the cutoff of W are skipped.
LocalityResult locality_order(const VertexAction& A, const SparseVec& u, const SparseVec& v, int mode_range,
                              unsigned k_max);

/// @brief Checks [u_m, v_n] = sum_i binom(m, i) (u_i v)_{m+n-i} on W for
/// |m|, |n| <= mode_range, with u_i v computed in V by self.
CheckResult commutator_formula_check(const VertexAction& self, const VertexAction& A, const SparseVec& u,
                                     const SparseVec& v, int mode_range);

/// @brief Checks u_n v = (-1)^{|u||v|} sum_k (-1)^{n+k+1} D^(k)(v_{n+k} u) in V for
/// -depth <= n <= deg u + deg v - 1.
CheckResult skew_symmetry_check(const VertexAction& self, const SparseVec& u, const SparseVec& v, int depth);

/// @brief Checks v_n 1 = 0 for n >= 0 and v_{-1} 1 = v.
CheckResult creation_check(const VertexAction& self, const SparseVec& v);

}  // namespace modzhu
