#include "qbar/random.hpp"

namespace qbar::random {

long integer(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational rational(Rng& rng, long bound) {
  long a = integer(rng, -bound, bound);
  long b = integer(rng, 1, bound);
  Rational q(a, b);
  q.canonicalize();
  return q;
}

TowerElement element(Rng& rng, const TowerContext& ctx, long bound) {
  std::vector<Rational> c(ctx.degree(), Rational(0));
  c[0] = rational(rng, bound);
  // only the pure generator terms, so entries stay short
  for (unsigned i = 0; i < ctx.generator_count(); ++i) c[std::size_t(1) << i] = Rational(integer(rng, -2, 2));
  return TowerElement(ctx, std::move(c));
}

Vector integer_vector(Rng& rng, std::size_t n, long bound, const TowerContext& ctx) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(ctx, Rational(integer(rng, -bound, bound)));
  return v;
}

Vector vector(Rng& rng, std::size_t n, long bound, const TowerContext& ctx) {
  for (;;) {
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(element(rng, ctx, bound));
    if (!is_zero_vector(v)) return v;
  }
}

Matrix symmetric(Rng& rng, std::size_t n, long bound, const TowerContext& ctx) {
  for (;;) {
    Matrix m(n, n, ctx);
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        m(i, j) = m(j, i) = element(rng, ctx, bound);
        zero = zero && m(i, j).is_zero();
      }
    if (!zero) return m;
  }
}

Matrix matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound, const TowerContext& ctx) {
  Matrix m(rows, cols, ctx);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = element(rng, ctx, bound);
  return m;
}

std::vector<Vector> independent(Rng& rng, std::size_t n, std::size_t count, long bound, const TowerContext& ctx) {
  for (;;) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < count; ++j) cols.push_back(integer_vector(rng, n, bound, ctx));
    if (rref(cols, n).rows.size() == count) return cols;
  }
}

Subspace subspace(Rng& rng, std::size_t n, std::size_t dim, long bound, const TowerContext& ctx) {
  return Subspace(n, independent(rng, n, dim, bound, ctx), ctx);
}

Matrix unimodular(Rng& rng, std::size_t n, long bound, const TowerContext& ctx) {
  Matrix a = Matrix::identity(n, ctx);
  if (n == 0) return a;
  const long steps = integer(rng, 1, 2 * static_cast<long>(n));
  for (long s = 0; s < steps; ++s) {
    Matrix e = Matrix::identity(n, ctx);
    std::size_t i = integer(rng, 0, n - 1), j = integer(rng, 0, n - 1);
    if (i == j) {
      // diag(t, 1/t) on a pair keeps the determinant
      if (n < 2) continue;
      j = (i + 1) % n;
      Rational t(integer(rng, 1, bound), integer(rng, 1, bound));
      t.canonicalize();
      e(i, i) = TowerElement(ctx, t);
      e(j, j) = TowerElement(ctx, Rational(1) / t);
    } else {
      e(i, j) = element(rng, ctx, bound);
    }
    a = e * a;
  }
  if (integer(rng, 0, 1)) {
    std::size_t r = integer(rng, 0, n - 1);
    for (std::size_t j = 0; j < n; ++j) a(r, j) = -a(r, j);
  }
  return a;
}

}  // namespace qbar::random
