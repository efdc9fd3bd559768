#pragma once

#include "qbar/tower.hpp"

#include <any>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

namespace qbar {

using Vector = std::vector<TowerElement>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const TowerContext& ctx);
  static Matrix identity(std::size_t n, const TowerContext& ctx);
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix from_columns(const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  TowerElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const TowerElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  const std::vector<TowerElement>& entries() const { return data_; }

  TowerContext context() const;  // union of the entry contexts
  Matrix lifted(const TowerContext& ctx) const;
  Matrix transpose() const;
  bool is_symmetric() const;  // formal comparison
  bool identical(const Matrix& o) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<TowerElement> data_;
};

Vector operator*(const Matrix& a, const Vector& x);
TowerElement dot(const Vector& x, const Vector& y);
Vector add(const Vector& x, const Vector& y);
Vector sub(const Vector& x, const Vector& y);
Vector scale(const TowerElement& a, const Vector& x);
Vector lift(const Vector& x, const TowerContext& ctx);
TowerContext context_of(const Vector& x);
TowerContext context_of(const std::vector<Vector>& xs);
bool is_zero_vector(const Vector& x);
bool identical(const Vector& x, const Vector& y);
Vector unit_vector(std::size_t n, std::size_t i, const TowerContext& ctx);
Vector rational_vector(const std::vector<Rational>& q, const TowerContext& ctx);

struct EchelonForm {
  std::vector<Vector> rows;  // reduced: pivot entries are 1, pivot columns otherwise zero
  std::vector<std::size_t> pivots;
};
EchelonForm rref(std::vector<Vector> rows, std::size_t width);
std::size_t rank(const Matrix& a);
TowerElement determinant(const Matrix& a);

// Subspace of K^N in canonical form: the rows of the reduced echelon form of any
// spanning set. Derived data (Grassmann vector, heights, small bases) is
// memoised behind a mutex so instances can be shared across threads.
class Subspace {
 public:
  Subspace();
  Subspace(std::size_t ambient, const std::vector<Vector>& spanning, const TowerContext& ctx);
  static Subspace full(std::size_t n, const TowerContext& ctx);
  static Subspace zero(std::size_t n, const TowerContext& ctx);

  std::size_t ambient() const;
  std::size_t dim() const;
  const std::vector<Vector>& basis() const;
  const std::vector<std::size_t>& pivots() const;
  const TowerContext& context() const;
  Matrix basis_columns() const;  // N x L
  const Vector& grassmann() const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  template <class T>
  std::shared_ptr<const T> memo(const std::string& key, const std::function<T()>& make) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  std::shared_ptr<const void> memo_get(const std::string& key) const;
  void memo_put(const std::string& key, std::shared_ptr<const void> v) const;
};

template <class T>
std::shared_ptr<const T> Subspace::memo(const std::string& key, const std::function<T()>& make) const {
  if (auto v = memo_get(key)) return std::static_pointer_cast<const T>(v);
  auto made = std::make_shared<const T>(make());
  memo_put(key, made);
  return made;
}

// All L x L minors of the N x L matrix with the given columns, row subsets in
// lexicographic order.
Vector grassmann(const std::vector<Vector>& columns);
Subspace kernel(const Matrix& a);  // {x : a x = 0}
Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);
// {y in z : y^T m = 0} for an N x c matrix m
Subspace constrained_kernel(const Subspace& z, const Matrix& m);
bool contains(const Subspace& u, const Vector& x);
bool contains(const Subspace& u, const Subspace& v);
// Equations of u: rows e with e . x = 0 exactly on u.
std::vector<Vector> equations(const Subspace& u);
// coordinates of x in the canonical basis of u (x must lie in u)
Vector coordinates(const Subspace& u, const Vector& x);

}  // namespace qbar
