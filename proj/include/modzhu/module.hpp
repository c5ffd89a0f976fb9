#pragma once

/// @file module.hpp
/// @brief Graded modules over the modes of a presentation, truncated at a
/// cutoff degree, together with generic constructions on them: direct sums,
/// basis changes, submodule closures and quotients.

#include "modzhu/lie.hpp"
#include "modzhu/linalg.hpp"

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace modzhu {

/// @brief Identifier of a basis vector of a graded module.
using StateId = std::uint32_t;

/// @brief A module over the modes of a presentation with finite-dimensional
/// homogeneous components in degrees 0, step, 2 step, ... up to the cutoff.
///
/// Basis vectors carry ids; vectors are SparseVec over those ids.  Modes of
/// degree delta map the degree-d component to the degree d + delta component.
class GradedModule {
 public:
  virtual ~GradedModule() = default;

  virtual const Presentation& presentation() const = 0;
  virtual const FiniteField& field() const = 0;
  virtual Exponent cutoff() const = 0;
  /// @brief Every degree is a multiple of the step.
  virtual Exponent step() const = 0;
  /// @brief Basis of the degree-d component in canonical order; throws TruncationError above the cutoff.
  virtual const std::vector<StateId>& basis(const Exponent& d) const = 0;
  virtual Exponent degree_of(StateId s) const = 0;
  /// @brief Position of s inside basis(degree_of(s)).
  virtual std::size_t position(StateId s) const = 0;
  /// @brief Parity of a basis vector (0 when the module carries no parity).
  virtual int parity_of(StateId s) const = 0;
  /// @brief Action of a generator mode on a basis vector.
  virtual SparseVec act(const ModeIndex& x, StateId s) const = 0;
  virtual Elem central_value(int k) const = 0;
  virtual std::string format_state(StateId s) const = 0;

  SparseVec act(const ModeIndex& x, const SparseVec& v) const;
  /// @brief Action of a Lie element; central elements act by their values.
  SparseVec act(const LieElement& x, const SparseVec& v) const;
  /// @brief 0, step, 2 step, ... up to the cutoff.
  std::vector<Exponent> degrees() const;
  std::size_t dimension(const Exponent& d) const { return basis(d).size(); }
  /// @brief Degree of a generator mode.
  Exponent mode_degree(const ModeIndex& x) const { return presentation().degree(x); }
  /// @brief Matrix of x from degree d to degree d + deg x; columns follow basis(d).
  Matrix mode_matrix(const ModeIndex& x, const Exponent& d) const;
  /// @brief All generator modes of degree delta with -cutoff <= delta <= cutoff.
  std::vector<ModeIndex> window_modes() const;
  /// @brief Modes of negative degree that can act nontrivially within the cutoff.
  std::vector<ModeIndex> lowering_modes() const;
  /// @brief Coordinates of a homogeneous vector of degree d.
  std::vector<Elem> coordinates(const SparseVec& v, const Exponent& d) const;
  /// @brief Vector with the given coordinates in degree d.
  SparseVec from_coordinates(const std::vector<Elem>& c, const Exponent& d) const;
  /// @brief Column j of m as a vector of degree d.
  SparseVec column_vector(const Matrix& m, std::size_t j, const Exponent& d) const;
  std::string format(const SparseVec& v) const;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

/// @brief A graded subspace: per degree, an echelon basis over positions in that degree.
struct GradedSubspace {
  std::map<Exponent, Echelon> rows;

  std::size_t dimension(const Exponent& d) const;
  /// @brief Reduces a homogeneous vector of degree d (module ids) modulo the subspace.
  SparseVec reduce(const GradedModule& M, const SparseVec& v, const Exponent& d) const;
  /// @brief Inserts a homogeneous vector; returns true when it was independent.
  bool insert(const GradedModule& M, const SparseVec& v, const Exponent& d);
  /// @brief True when v lies in the subspace.
  bool contains(const GradedModule& M, const SparseVec& v, const Exponent& d) const;
  /// @brief The echelon basis rows rewritten as vectors of module ids.
  std::vector<SparseVec> vectors(const GradedModule& M) const;
};

/// @brief Splits a vector into homogeneous components by degree.
std::map<Exponent, SparseVec> homogeneous_parts(const GradedModule& M, const SparseVec& v);

/// @brief Smallest subspace containing the homogeneous generators and closed
/// under every generator mode within the window [0, cutoff].
GradedSubspace submodule_closure(const GradedModule& M, const std::vector<SparseVec>& generators);

/// @brief The quotient M / S by a submodule S, using the basis vectors of M
/// that are not pivots of S.
class QuotientModule : public GradedModule {
 public:
  QuotientModule(ModulePtr parent, GradedSubspace sub);

  const Presentation& presentation() const override { return parent_->presentation(); }
  const FiniteField& field() const override { return parent_->field(); }
  Exponent cutoff() const override { return parent_->cutoff(); }
  Exponent step() const override { return parent_->step(); }
  const std::vector<StateId>& basis(const Exponent& d) const override;
  Exponent degree_of(StateId s) const override { return parent_->degree_of(s); }
  std::size_t position(StateId s) const override;
  int parity_of(StateId s) const override { return parent_->parity_of(s); }
  SparseVec act(const ModeIndex& x, StateId s) const override;
  using GradedModule::act;
  Elem central_value(int k) const override { return parent_->central_value(k); }
  std::string format_state(StateId s) const override { return parent_->format_state(s); }

  const GradedModule& parent() const { return *parent_; }
  const GradedSubspace& submodule() const { return sub_; }
  /// @brief Normal form of a parent vector.
  SparseVec reduce(const SparseVec& v) const;

 private:
  ModulePtr parent_;
  GradedSubspace sub_;
  std::map<Exponent, std::vector<StateId>> basis_;
  std::map<StateId, std::size_t> position_;
};

/// @brief Direct sum of modules over the same presentation.
class DirectSum : public GradedModule {
 public:
  explicit DirectSum(std::vector<ModulePtr> parts);

  const Presentation& presentation() const override { return parts_.front()->presentation(); }
  const FiniteField& field() const override { return parts_.front()->field(); }
  Exponent cutoff() const override { return cutoff_; }
  Exponent step() const override { return step_; }
  const std::vector<StateId>& basis(const Exponent& d) const override;
  Exponent degree_of(StateId s) const override;
  std::size_t position(StateId s) const override { return slots_.at(s).position; }
  int parity_of(StateId s) const override;
  SparseVec act(const ModeIndex& x, StateId s) const override;
  using GradedModule::act;
  Elem central_value(int k) const override { return parts_.front()->central_value(k); }
  std::string format_state(StateId s) const override;

  /// @brief Embeds a vector of part i.
  SparseVec embed(std::size_t i, const SparseVec& v) const;

 private:
  struct Slot {
    std::size_t part;
    StateId local;
    std::size_t position;
  };
  std::vector<ModulePtr> parts_;
  Exponent cutoff_, step_;
  std::map<Exponent, std::vector<StateId>> basis_;
  std::vector<Slot> slots_;
  std::vector<std::map<StateId, StateId>> global_;
};

/// @brief The same module written in a random homogeneous basis.
///
/// Basis vector j of degree d is sum_i P_d(i, j) b_i, where b_i is the
/// parent basis and P_d is a seeded random invertible matrix that only mixes
/// basis vectors of equal parity.
class BasisChange : public GradedModule {
 public:
  BasisChange(ModulePtr parent, std::uint64_t seed);

  const Presentation& presentation() const override { return parent_->presentation(); }
  const FiniteField& field() const override { return parent_->field(); }
  Exponent cutoff() const override { return parent_->cutoff(); }
  Exponent step() const override { return parent_->step(); }
  const std::vector<StateId>& basis(const Exponent& d) const override { return parent_->basis(d); }
  Exponent degree_of(StateId s) const override { return parent_->degree_of(s); }
  std::size_t position(StateId s) const override { return parent_->position(s); }
  int parity_of(StateId s) const override { return parent_->parity_of(s); }
  SparseVec act(const ModeIndex& x, StateId s) const override;
  using GradedModule::act;
  Elem central_value(int k) const override { return parent_->central_value(k); }
  std::string format_state(StateId s) const override { return "b" + std::to_string(s); }

 private:
  ModulePtr parent_;
  std::map<Exponent, Matrix> change_, inverse_;
};

}  // namespace modzhu
