#include "qbar/linalg.hpp"

#include <map>
#include <unordered_map>

namespace qbar {

// ---------------------------------------------------------------- vectors

TowerContext context_of(const Vector& x) {
  if (x.empty()) return TowerContext::rational();
  TowerContext c = x[0].context();
  for (const auto& e : x)
    if (e.context().raw() != c.raw()) c = unify(c, e.context());
  return c;
}

TowerContext context_of(const std::vector<Vector>& xs) {
  TowerContext c = TowerContext::rational();
  for (const auto& x : xs)
    for (const auto& e : x)
      if (e.context().raw() != c.raw()) c = unify(c, e.context());
  return c;
}

Vector lift(const Vector& x, const TowerContext& ctx) {
  Vector r;
  r.reserve(x.size());
  for (const auto& e : x) r.push_back(e.lift(ctx));
  return r;
}

TowerElement dot(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) fail(ErrorCode::ambient_mismatch, "dot of vectors of different length");
  TowerElement acc(unify(context_of(x), context_of(y)), Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].formally_zero() || y[i].formally_zero()) continue;
    acc += x[i] * y[i];
  }
  return acc;
}

Vector add(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) fail(ErrorCode::ambient_mismatch, "sum of vectors of different length");
  Vector r = x;
  for (std::size_t i = 0; i < x.size(); ++i) r[i] += y[i];
  return r;
}

Vector sub(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) fail(ErrorCode::ambient_mismatch, "difference of vectors of different length");
  Vector r = x;
  for (std::size_t i = 0; i < x.size(); ++i) r[i] -= y[i];
  return r;
}

Vector scale(const TowerElement& a, const Vector& x) {
  Vector r;
  r.reserve(x.size());
  for (const auto& e : x) r.push_back(a * e);
  return r;
}

bool is_zero_vector(const Vector& x) {
  for (const auto& e : x)
    if (!e.is_zero()) return false;
  return true;
}

bool identical(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].identical(y[i])) return false;
  return true;
}

Vector unit_vector(std::size_t n, std::size_t i, const TowerContext& ctx) {
  Vector v(n, TowerElement(ctx, Rational(0)));
  v.at(i) = TowerElement(ctx, Rational(1));
  return v;
}

Vector rational_vector(const std::vector<Rational>& q, const TowerContext& ctx) {
  Vector v;
  for (const auto& x : q) v.emplace_back(ctx, x);
  return v;
}

// ---------------------------------------------------------------- matrices

Matrix::Matrix(std::size_t rows, std::size_t cols, const TowerContext& ctx)
    : rows_(rows), cols_(cols), data_(rows * cols, TowerElement(ctx, Rational(0))) {}

Matrix Matrix::identity(std::size_t n, const TowerContext& ctx) {
  Matrix m(n, n, ctx);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = TowerElement(ctx, Rational(1));
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  Matrix m;
  m.rows_ = rows.size();
  m.cols_ = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != m.cols_) fail(ErrorCode::ambient_mismatch, "ragged matrix rows");
    m.data_.insert(m.data_.end(), r.begin(), r.end());
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols) { return from_rows(cols).transpose(); }

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
  Vector v;
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

TowerContext Matrix::context() const { return context_of(data_); }

Matrix Matrix::lifted(const TowerContext& ctx) const {
  Matrix m = *this;
  for (auto& e : m.data_) e = e.lift(ctx);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.data_.reserve(data_.size());
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) t.data_.push_back((*this)(i, j));
  return t;
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (!(*this)(i, j).identical((*this)(j, i))) return false;
  return true;
}

bool Matrix::identical(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!data_[i].identical(o.data_[i])) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::ambient_mismatch, "matrix product shape mismatch");
  TowerContext ctx = unify(a.context(), b.context());
  Matrix c(a.rows_, b.cols_, ctx);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (aik.formally_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const auto& bkj = b(k, j);
        if (bkj.formally_zero()) continue;
        c(i, j) += aik * bkj;
      }
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorCode::ambient_mismatch, "matrix sum shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorCode::ambient_mismatch, "matrix difference shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) fail(ErrorCode::ambient_mismatch, "matrix-vector shape mismatch");
  Vector y;
  y.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y.push_back(dot(a.row(i), x));
  return y;
}

// ---------------------------------------------------------------- elimination

EchelonForm rref(std::vector<Vector> rows, std::size_t width) {
  TowerContext ctx = context_of(rows);
  for (auto& r : rows) {
    if (r.size() != width) fail(ErrorCode::ambient_mismatch, "row width mismatch");
    r = lift(r, ctx);
  }
  const TowerElement zero(ctx, Rational(0));
  EchelonForm out;
  std::size_t cur = 0;
  for (std::size_t col = 0; col < width && cur < rows.size(); ++col) {
    std::size_t piv = rows.size();
    // prefer a rational pivot: cheaper and never raises
    for (std::size_t r = cur; r < rows.size(); ++r)
      if (!rows[r][col].formally_zero() && rows[r][col].is_rational()) {
        piv = r;
        break;
      }
    if (piv == rows.size())
      for (std::size_t r = cur; r < rows.size(); ++r)
        if (!rows[r][col].is_zero()) {
          piv = r;
          break;
        }
    if (piv == rows.size()) {
      for (std::size_t r = cur; r < rows.size(); ++r) rows[r][col] = zero;
      continue;
    }
    std::swap(rows[cur], rows[piv]);
    TowerElement inv = invert(rows[cur][col]);
    for (std::size_t j = col; j < width; ++j)
      if (!rows[cur][j].formally_zero()) rows[cur][j] = rows[cur][j] * inv;
    rows[cur][col] = TowerElement(ctx, Rational(1));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == cur || rows[r][col].formally_zero()) continue;
      TowerElement f = rows[r][col];
      for (std::size_t j = col + 1; j < width; ++j)
        if (!rows[cur][j].formally_zero()) rows[r][j] -= f * rows[cur][j];
      rows[r][col] = zero;
    }
    out.pivots.push_back(col);
    ++cur;
  }
  rows.resize(cur);
  out.rows = std::move(rows);
  return out;
}

std::size_t rank(const Matrix& a) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  return rref(std::move(rows), a.cols()).pivots.size();
}

TowerElement determinant(const Matrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::ambient_mismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  TowerContext ctx = a.context();
  Matrix m = a.lifted(ctx);
  TowerElement det(ctx, Rational(1));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv == n) return TowerElement(ctx, Rational(0));
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det = det * m(c, c);
    TowerElement inv = invert(m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).formally_zero()) continue;
      TowerElement f = m(r, c) * inv;
      for (std::size_t j = c + 1; j < n; ++j)
        if (!m(c, j).formally_zero()) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

// ---------------------------------------------------------------- subspaces

struct Subspace::Impl {
  std::size_t ambient = 0;
  std::vector<Vector> basis;
  std::vector<std::size_t> pivots;
  TowerContext ctx = TowerContext::rational();
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<const void>> memo;
};

Subspace::Subspace() : impl_(std::make_shared<Impl>()) {}

Subspace::Subspace(std::size_t ambient, const std::vector<Vector>& spanning, const TowerContext& ctx)
    : impl_(std::make_shared<Impl>()) {
  for (const auto& v : spanning)
    if (v.size() != ambient) fail(ErrorCode::ambient_mismatch, "spanning vector outside ambient space");
  TowerContext c = unify(ctx, context_of(spanning));
  std::vector<Vector> rows;
  for (const auto& v : spanning) rows.push_back(lift(v, c));
  EchelonForm e = rref(std::move(rows), ambient);
  impl_->ambient = ambient;
  impl_->basis = std::move(e.rows);
  impl_->pivots = std::move(e.pivots);
  impl_->ctx = c;
}

Subspace Subspace::full(std::size_t n, const TowerContext& ctx) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(unit_vector(n, i, ctx));
  return Subspace(n, rows, ctx);
}

Subspace Subspace::zero(std::size_t n, const TowerContext& ctx) { return Subspace(n, {}, ctx); }

std::size_t Subspace::ambient() const { return impl_->ambient; }
std::size_t Subspace::dim() const { return impl_->basis.size(); }
const std::vector<Vector>& Subspace::basis() const { return impl_->basis; }
const std::vector<std::size_t>& Subspace::pivots() const { return impl_->pivots; }
const TowerContext& Subspace::context() const { return impl_->ctx; }

Matrix Subspace::basis_columns() const {
  if (dim() == 0) return Matrix(ambient(), 0, context());
  return Matrix::from_columns(basis());
}

const Vector& Subspace::grassmann() const {
  return *memo<Vector>("grassmann", [this] { return qbar::grassmann(basis()); });
}

bool Subspace::operator==(const Subspace& o) const {
  if (ambient() != o.ambient() || dim() != o.dim() || pivots() != o.pivots()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < ambient(); ++j)
      if (!basis()[i][j].equals(o.basis()[i][j])) return false;
  return true;
}

std::shared_ptr<const void> Subspace::memo_get(const std::string& key) const {
  std::lock_guard lock(impl_->mutex);
  auto it = impl_->memo.find(key);
  return it == impl_->memo.end() ? nullptr : it->second;
}

void Subspace::memo_put(const std::string& key, std::shared_ptr<const void> v) const {
  std::lock_guard lock(impl_->mutex);
  impl_->memo.emplace(key, std::move(v));
}

Vector grassmann(const std::vector<Vector>& columns) {
  const std::size_t L = columns.size();
  if (L == 0) return {TowerElement(TowerContext::rational(), Rational(1))};
  const std::size_t N = columns[0].size();
  if (L > N) fail(ErrorCode::rank_deficient, "more columns than rows");
  if (N > 30) fail(ErrorCode::ambient_mismatch, "ambient dimension too large for Grassmann expansion");
  TowerContext ctx = context_of(columns);
  const TowerElement zero(ctx, Rational(0));
  // det of rows S against the first |S| columns, by Laplace along the last column
  std::unordered_map<std::uint32_t, TowerElement> prev, cur;
  prev.emplace(0u, TowerElement(ctx, Rational(1)));
  std::vector<std::uint32_t> order;
  for (std::size_t k = 1; k <= L; ++k) {
    cur.clear();
    order.clear();
    // enumerate k-subsets in lexicographic order
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::uint32_t mask = 0;
      for (auto i : idx) mask |= 1u << i;
      TowerElement acc = zero;
      for (std::size_t j = 0; j < k; ++j) {
        const auto& x = columns[k - 1][idx[j]];
        if (x.formally_zero()) continue;
        auto it = prev.find(mask & ~(1u << idx[j]));
        if (it == prev.end() || it->second.formally_zero()) continue;
        TowerElement t = x * it->second;
        if ((j + k - 1) % 2)
          acc -= t;
        else
          acc += t;
      }
      cur.emplace(mask, std::move(acc));
      order.push_back(mask);
      std::size_t p = k;
      while (p > 0 && idx[p - 1] == N - k + p - 1) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t q = p; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
    std::swap(prev, cur);
  }
  Vector out;
  out.reserve(order.size());
  for (auto m : order) out.push_back(prev.at(m));
  return out;
}

Subspace kernel(const Matrix& a) {
  const std::size_t n = a.cols();
  TowerContext ctx = a.context();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  EchelonForm e = rref(std::move(rows), n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v = unit_vector(n, f, ctx);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return Subspace(n, basis, ctx);
}

std::vector<Vector> equations(const Subspace& u) {
  return *u.memo<std::vector<Vector>>("equations", [&u] {
           if (u.dim() == 0) {
             std::vector<Vector> all;
             for (std::size_t i = 0; i < u.ambient(); ++i) all.push_back(unit_vector(u.ambient(), i, u.context()));
             return all;
           }
           return kernel(Matrix::from_rows(u.basis())).basis();
         });
}

Subspace constrained_kernel(const Subspace& z, const Matrix& m) {
  if (m.rows() != z.ambient()) fail(ErrorCode::ambient_mismatch, "constraint matrix height differs from ambient");
  if (z.dim() == 0 || m.cols() == 0) return z;
  TowerContext ctx = unify(z.context(), m.context());
  // coefficient a in K^L with sum a_i (z_i^T m) = 0
  Matrix c(m.cols(), z.dim(), ctx);
  for (std::size_t i = 0; i < z.dim(); ++i)
    for (std::size_t col = 0; col < m.cols(); ++col) c(col, i) = dot(z.basis()[i], m.column(col));
  Subspace a = kernel(c);
  std::vector<Vector> out;
  for (const auto& coef : a.basis()) {
    Vector y(z.ambient(), TowerElement(ctx, Rational(0)));
    for (std::size_t i = 0; i < z.dim(); ++i)
      if (!coef[i].formally_zero()) y = add(y, scale(coef[i], z.basis()[i]));
    out.push_back(std::move(y));
  }
  return Subspace(z.ambient(), out, ctx);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) fail(ErrorCode::ambient_mismatch, "intersection of subspaces in different ambients");
  auto eq = equations(v);
  if (eq.empty()) return u;
  return constrained_kernel(u, Matrix::from_columns(eq));
}

Subspace sum(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) fail(ErrorCode::ambient_mismatch, "sum of subspaces in different ambients");
  std::vector<Vector> all = u.basis();
  all.insert(all.end(), v.basis().begin(), v.basis().end());
  return Subspace(u.ambient(), all, unify(u.context(), v.context()));
}

bool contains(const Subspace& u, const Vector& x) {
  if (x.size() != u.ambient()) fail(ErrorCode::ambient_mismatch, "vector outside ambient space");
  for (const auto& e : equations(u))
    if (!dot(e, x).is_zero()) return false;
  return true;
}

bool contains(const Subspace& u, const Subspace& v) {
  for (const auto& b : v.basis())
    if (!contains(u, b)) return false;
  return true;
}

Vector coordinates(const Subspace& u, const Vector& x) {
  Vector a;
  for (auto p : u.pivots()) a.push_back(x.at(p));
  return a;
}

}  // namespace qbar
