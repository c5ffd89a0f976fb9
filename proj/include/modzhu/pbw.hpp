#pragma once

/// @file pbw.hpp
/// @brief Induced modules with a PBW basis: vacuum modules of vertex
/// superalgebras and Verma-type modules over a finite-dimensional bottom.

#include "modzhu/module.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

namespace modzhu {

/// @brief Data of a module induced from a finite-dimensional bottom U.
///
/// A mode X_M is a creation operator when M < creation_bound[X].  The
/// remaining modes act on U: the degree-zero mode of X (M = offset) acts by
/// bottom_action[X] when present and by zero otherwise; all other
/// non-creation modes annihilate U.
struct InducedModuleData {
  Presentation presentation;
  std::vector<Exponent> creation_bound;
  std::vector<Elem> central_values;
  std::size_t bottom_dim = 1;
  std::vector<int> bottom_parity;
  std::map<int, Matrix> bottom_action;
  Exponent cutoff;
};

/// @brief The induced module U(g) (x)_{U(g_{<=0})} U truncated at a cutoff.
///
/// Basis vectors are normal-ordered monomials x_1 ... x_k u_b with creation
/// factors sorted by the key (M - offset, generator) ascending, so that the
/// factors of highest degree come first and no odd factor repeats.  State ids
/// increase with degree; inside a degree, monomials with more factors come
/// first, then lexicographically larger key sequences, then larger b.
class InducedModule : public GradedModule {
 public:
  explicit InducedModule(InducedModuleData data);

  /// @brief Vacuum module: every generator creates below mode offset - weight + 1.
  static std::shared_ptr<InducedModule> vacuum(const Presentation& P, std::vector<Elem> central_values,
                                               const Exponent& cutoff);
  /// @brief Verma module over U: modes below the offset create, degree-zero modes act by matrices.
  static std::shared_ptr<InducedModule> verma(const Presentation& P, std::vector<Elem> central_values,
                                              std::size_t bottom_dim, std::map<int, Matrix> bottom_action,
                                              const Exponent& cutoff, std::vector<int> bottom_parity = {});

  const Presentation& presentation() const override { return data_.presentation; }
  const FiniteField& field() const override { return data_.presentation.field(); }
  Exponent cutoff() const override { return data_.cutoff; }
  Exponent step() const override { return step_; }
  const std::vector<StateId>& basis(const Exponent& d) const override;
  Exponent degree_of(StateId s) const override { return states_.at(s).degree; }
  std::size_t position(StateId s) const override { return s - first_id_.at(states_.at(s).degree); }
  int parity_of(StateId s) const override { return states_.at(s).parity; }
  SparseVec act(const ModeIndex& x, StateId s) const override;
  Elem central_value(int k) const override { return data_.central_values.at(k); }
  std::string format_state(StateId s) const override;
  using GradedModule::act;

  const InducedModuleData& data() const { return data_; }
  bool is_creation(const ModeIndex& x) const { return x.mode < data_.creation_bound.at(x.gen); }
  /// @brief Id of the monomial with the given canonical factors on u_b, if it lies within the cutoff.
  std::optional<StateId> state(const std::vector<ModeIndex>& factors, std::size_t b = 0) const;
  const std::vector<ModeIndex>& factors(StateId s) const { return states_.at(s).factors; }
  std::size_t bottom_index(StateId s) const { return states_.at(s).bottom; }
  /// @brief x_1 x_2 ... x_k v in normal order (x_k acts first).
  SparseVec straighten(const std::vector<ModeIndex>& word, const SparseVec& v) const;
  std::size_t graded_dimension(const Exponent& d) const { return basis(d).size(); }
  /// @brief Creation modes of degree at most the cutoff, in canonical order.
  const std::vector<ModeIndex>& creation_modes() const { return creation_; }

 private:
  struct State {
    std::vector<ModeIndex> factors;
    std::size_t bottom = 0;
    Exponent degree;
    int parity = 0;
  };
  using Key = std::tuple<int, std::int64_t, std::int64_t, StateId>;

  bool key_less(const ModeIndex& a, const ModeIndex& b) const;
  SparseVec compute(const ModeIndex& x, StateId s) const;
  SparseVec act_lie(const LieElement& x, StateId s) const;
  void enumerate();

  InducedModuleData data_;
  Exponent step_;
  std::vector<ModeIndex> creation_;
  std::vector<State> states_;
  std::map<Exponent, std::vector<StateId>> basis_;
  std::map<Exponent, StateId> first_id_;
  std::map<std::pair<std::vector<ModeIndex>, std::size_t>, StateId> index_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<Key, SparseVec> memo_;
};

/// @brief The quotient of M by the submodule generated by homogeneous vectors.
std::shared_ptr<QuotientModule> quotient_by_ideal(ModulePtr M, const std::vector<SparseVec>& generators);

}  // namespace modzhu
