#pragma once

/// @file linalg.hpp
/// @brief Exact sparse and dense linear algebra over a finite field.

#include "modzhu/scalars.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace modzhu {

using Elem = FiniteField::Elem;

/// @brief Sparse vector: strictly increasing indices with nonzero values.
struct SparseVec {
  std::vector<std::pair<std::uint32_t, Elem>> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  /// @brief Largest index present; only valid when nonempty.
  std::uint32_t lead() const { return entries.back().first; }
  Elem coeff(std::uint32_t idx) const;
  bool operator==(const SparseVec& o) const { return entries == o.entries; }
};

/// @brief Builds a sparse vector from unsorted (index, value) pairs, summing repeats.
SparseVec make_sparse(const FiniteField& f, std::vector<std::pair<std::uint32_t, Elem>> raw);

/// @brief Returns y + a x.
SparseVec axpy(const FiniteField& f, Elem a, const SparseVec& x, const SparseVec& y);

/// @brief Returns a x.
SparseVec scale(const FiniteField& f, Elem a, const SparseVec& x);

/// @brief Accumulator for long linear combinations of sparse vectors.
class SparseAccumulator {
 public:
  explicit SparseAccumulator(const FiniteField& f) : f_(&f) {}
  void add(std::uint32_t idx, Elem v);
  void add(Elem a, const SparseVec& x);
  SparseVec take();
  bool empty() const { return acc_.empty(); }

 private:
  const FiniteField* f_;
  std::map<std::uint32_t, Elem> acc_;
};

/// @brief Incremental row echelon form; the pivot of a row is its largest index.
///
/// Reduction eliminates pivot coordinates from the top down, so the remainder
/// of a vector is unique for a fixed row space and independent of the order
/// in which rows were inserted.
class Echelon {
 public:
  explicit Echelon(const FiniteField& f) : f_(&f) {}

  /// @brief Reduces v against the stored rows.
  SparseVec reduce(SparseVec v) const;
  /// @brief Inserts v; returns true when v was independent.
  bool insert(SparseVec v);
  /// @brief Number of stored rows.
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::uint32_t idx) const { return rows_.count(idx) != 0; }
  const std::map<std::uint32_t, SparseVec>& rows() const { return rows_; }
  /// @brief Converts rows to reduced form (pivot coefficient 1, no pivot entries elsewhere).
  void make_reduced();

 private:
  const FiniteField* f_;
  std::map<std::uint32_t, SparseVec> rows_;
};

/// @brief Dense matrix with row-major storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const FiniteField& f, std::size_t rows, std::size_t cols)
      : f_(&f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static Matrix identity(const FiniteField& f, std::size_t n);

  const FiniteField& field() const { return *f_; }
  bool has_field() const { return f_ != nullptr; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Elem a) const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;

  /// @brief In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  /// @brief Basis of the right kernel {x : A x = 0}, as columns of the result.
  Matrix kernel() const;
  /// @brief Inverse; throws InvalidScalar when singular.
  Matrix inverse() const;
  Matrix transpose() const;
  /// @brief Stacks rows of b below rows of this matrix.
  Matrix vstack(const Matrix& b) const;
  /// @brief Concatenates columns of b to the right.
  Matrix hstack(const Matrix& b) const;
  /// @brief Columns [c0, c1).
  Matrix col_range(std::size_t c0, std::size_t c1) const;

  /// @brief Seeded random invertible matrix.
  static Matrix random_invertible(const FiniteField& f, std::size_t n, std::mt19937_64& rng);

 private:
  const FiniteField* f_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

}  // namespace modzhu
