#include "modzhu/linalg.hpp"

#include <algorithm>

namespace modzhu {

Elem SparseVec::coeff(std::uint32_t idx) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), idx,
                             [](const auto& e, std::uint32_t i) { return e.first < i; });
  if (it != entries.end() && it->first == idx) return it->second;
  return 0;
}

SparseVec make_sparse(const FiniteField& f, std::vector<std::pair<std::uint32_t, Elem>> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (const auto& [i, v] : raw) {
    if (!out.entries.empty() && out.entries.back().first == i) {
      out.entries.back().second = f.add(out.entries.back().second, v);
      if (out.entries.back().second == 0) out.entries.pop_back();
    } else if (v != 0) {
      out.entries.emplace_back(i, v);
    }
  }
  return out;
}

SparseVec axpy(const FiniteField& f, Elem a, const SparseVec& x, const SparseVec& y) {
  if (a == 0 || x.empty()) return y;
  SparseVec out;
  out.entries.reserve(x.size() + y.size());
  auto ix = x.entries.begin(), iy = y.entries.begin();
  while (ix != x.entries.end() || iy != y.entries.end()) {
    if (iy == y.entries.end() || (ix != x.entries.end() && ix->first < iy->first)) {
      out.entries.emplace_back(ix->first, f.mul(a, ix->second));
      ++ix;
    } else if (ix == x.entries.end() || iy->first < ix->first) {
      out.entries.push_back(*iy);
      ++iy;
    } else {
      Elem v = f.add(iy->second, f.mul(a, ix->second));
      if (v != 0) out.entries.emplace_back(ix->first, v);
      ++ix;
      ++iy;
    }
  }
  return out;
}

SparseVec scale(const FiniteField& f, Elem a, const SparseVec& x) {
  SparseVec out;
  if (a == 0) return out;
  out.entries.reserve(x.size());
  for (const auto& [i, v] : x.entries) out.entries.emplace_back(i, f.mul(a, v));
  return out;
}

void SparseAccumulator::add(std::uint32_t idx, Elem v) {
  if (v == 0) return;
  auto [it, inserted] = acc_.emplace(idx, v);
  if (!inserted) {
    it->second = f_->add(it->second, v);
    if (it->second == 0) acc_.erase(it);
  }
}

void SparseAccumulator::add(Elem a, const SparseVec& x) {
  if (a == 0) return;
  for (const auto& [i, v] : x.entries) add(i, f_->mul(a, v));
}

SparseVec SparseAccumulator::take() {
  SparseVec out;
  out.entries.assign(acc_.begin(), acc_.end());
  acc_.clear();
  return out;
}

SparseVec Echelon::reduce(SparseVec v) const {
  // Walk pivots from the top; each elimination only touches smaller indices.
  std::size_t pos = v.entries.size();
  while (pos > 0) {
    --pos;
    std::uint32_t idx = v.entries[pos].first;
    auto row = rows_.find(idx);
    if (row == rows_.end()) continue;
    Elem c = f_->div(v.entries[pos].second, row->second.entries.back().second);
    v = axpy(*f_, f_->neg(c), row->second, v);
    // Entries above idx are untouched; resume just below idx.
    pos = static_cast<std::size_t>(
        std::lower_bound(v.entries.begin(), v.entries.end(), idx,
                         [](const auto& e, std::uint32_t i) { return e.first < i; }) -
        v.entries.begin());
  }
  return v;
}

bool Echelon::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Elem lead = v.entries.back().second;
  v = scale(*f_, f_->inv(lead), v);
  rows_.emplace(v.lead(), std::move(v));
  return true;
}

void Echelon::make_reduced() {
  for (auto& [piv, row] : rows_) {
    SparseVec rest = row;
    rest.entries.pop_back();
    rest = reduce(rest);
    rest.entries.emplace_back(piv, f_->one());
    row = std::move(rest);
  }
}

Matrix Matrix::identity(const FiniteField& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r(*f_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Elem a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.at(i, j) = f_->add(r.at(i, j), f_->mul(a, o.at(k, j)));
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = f_->add(data_[i], o.data_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = f_->sub(data_[i], o.data_[i]);
  return r;
}

Matrix Matrix::scaled(Elem a) const {
  Matrix r = *this;
  for (auto& x : r.data_) x = f_->mul(a, x);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

std::vector<std::size_t> Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t sel = r;
    while (sel < rows_ && at(sel, c) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
    Elem inv = f_->inv(at(r, c));
    for (std::size_t j = 0; j < cols_; ++j) at(r, j) = f_->mul(inv, at(r, j));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      Elem factor = at(i, c);
      for (std::size_t j = 0; j < cols_; ++j)
        at(i, j) = f_->sub(at(i, j), f_->mul(factor, at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t Matrix::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  Matrix m = *this;
  return m.rref().size();
}

Matrix Matrix::kernel() const {
  Matrix m = *this;
  auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix k(*f_, cols_, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    k.at(free[j], j) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      k.at(pivots[i], j) = f_->neg(m.at(i, free[j]));
  }
  return k;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw InvalidScalar("inverse of a non-square matrix");
  if (rows_ == 0) return *this;
  Matrix aug = hstack(identity(*f_, rows_));
  auto pivots = aug.rref();
  if (pivots.size() < rows_ || pivots[rows_ - 1] >= rows_)
    throw InvalidScalar("matrix is singular");
  return aug.col_range(rows_, 2 * rows_);
}

Matrix Matrix::transpose() const {
  Matrix t(*f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::vstack(const Matrix& b) const {
  if (!has_field()) return b;
  if (!b.has_field()) return *this;
  Matrix r(*f_, rows_ + b.rows_, cols_);
  std::copy(data_.begin(), data_.end(), r.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), r.data_.begin() + data_.size());
  return r;
}

Matrix Matrix::hstack(const Matrix& b) const {
  Matrix r(*f_, rows_, cols_ + b.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, cols_ + j) = b.at(i, j);
  }
  return r;
}

Matrix Matrix::col_range(std::size_t c0, std::size_t c1) const {
  Matrix r(*f_, rows_, c1 - c0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = c0; j < c1; ++j) r.at(i, j - c0) = at(i, j);
  return r;
}

Matrix Matrix::random_invertible(const FiniteField& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> dist(0, f.q() - 1);
  while (true) {
    Matrix m(f, n, n);
    for (auto& x : m.data_) x = dist(rng);
    if (m.rank() == n) return m;
  }
}

}  // namespace modzhu
