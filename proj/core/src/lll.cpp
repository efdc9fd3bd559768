#include "qbar/lll.hpp"

#include "qbar/errors.hpp"

namespace qbar::lll {

namespace {

Integer divexact(const Integer& a, const Integer& b) {
  Integer r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// nearest integer to a / b, b > 0
Integer round_div(const Integer& a, const Integer& b) {
  Integer r;
  Integer num = 2 * a + b;
  Integer den = 2 * b;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

}  // namespace

IntMatrix reduce_gram(const IntMatrix& gram, const Rational& delta) {
  const std::size_t n = gram.size();
  IntMatrix h(n + 1, std::vector<Integer>(n + 1, 0));
  for (std::size_t i = 1; i <= n; ++i) h[i][i] = 1;
  auto strip = [&] {
    IntMatrix u(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u[i][j] = h[i + 1][j + 1];
    return u;
  };
  if (n <= 1) return strip();

  // 1-indexed working copies
  IntMatrix g(n + 1, std::vector<Integer>(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i + 1][j + 1] = gram[i][j];
  IntMatrix lam(n + 1, std::vector<Integer>(n + 1, 0));
  std::vector<Integer> d(n + 1, 0);
  d[0] = 1;
  d[1] = g[1][1];
  if (d[1] <= 0) fail(ErrorCode::rank_deficient, "Gram matrix not positive definite");
  const Integer dn = delta.get_num(), dd = delta.get_den();

  auto redi = [&](std::size_t k, std::size_t l) {
    if (abs(2 * lam[k][l]) <= d[l]) return;
    Integer q = round_div(lam[k][l], d[l]);
    for (std::size_t j = 1; j <= n; ++j) h[k][j] -= q * h[l][j];
    // b_k <- b_k - q b_l
    Integer gkk = g[k][k] - 2 * q * g[k][l] + q * q * g[l][l];
    for (std::size_t j = 1; j <= n; ++j)
      if (j != k) g[k][j] -= q * g[l][j];
    g[k][k] = gkk;
    for (std::size_t j = 1; j <= n; ++j) g[j][k] = g[k][j];
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  auto swapi = [&](std::size_t k, std::size_t kmax) {
    std::swap(h[k], h[k - 1]);
    std::swap(g[k], g[k - 1]);
    for (std::size_t j = 1; j <= n; ++j) std::swap(g[j][k], g[j][k - 1]);
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    Integer l = lam[k][k - 1];
    Integer b = divexact(d[k - 2] * d[k] + l * l, d[k - 1]);
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      Integer t = lam[i][k];
      lam[i][k] = divexact(d[k] * lam[i][k - 1] - l * t, d[k - 1]);
      lam[i][k - 1] = divexact(b * t + l * lam[i][k], d[k]);
    }
    d[k - 1] = b;
  };

  std::size_t k = 2, kmax = 1;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Integer u = g[k][j];
        for (std::size_t i = 1; i < j; ++i) u = divexact(d[i] * u - lam[k][i] * lam[j][i], d[i - 1]);
        if (j < k)
          lam[k][j] = u;
        else {
          d[k] = u;
          if (u <= 0) fail(ErrorCode::rank_deficient, "Gram matrix not positive definite");
        }
      }
    }
    redi(k, k - 1);
    if (dd * d[k] * d[k - 2] < dn * d[k - 1] * d[k - 1] - dd * lam[k][k - 1] * lam[k][k - 1]) {
      swapi(k, kmax);
      k = std::max<std::size_t>(2, k - 1);
    } else {
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
    }
  }
  return strip();
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  IntMatrix c(n, std::vector<Integer>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

IntMatrix reduce_rows(const IntMatrix& rows, const Rational& delta) {
  const std::size_t n = rows.size();
  IntMatrix gram(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Integer s = 0;
      for (std::size_t t = 0; t < rows[i].size(); ++t) s += rows[i][t] * rows[j][t];
      gram[i][j] = gram[j][i] = s;
    }
  return multiply(reduce_gram(gram, delta), rows);
}

IntMatrix saturate(const IntMatrix& rows) {
  if (rows.empty()) return {};
  const std::size_t r = rows.size(), n = rows[0].size();
  IntMatrix b = rows;
  IntMatrix vinv(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) vinv[i][i] = 1;
  std::size_t p = 0;
  Integer g, s, t;
  for (std::size_t i = 0; i < r && p < n; ++i) {
    for (std::size_t j = p + 1; j < n; ++j) {
      if (b[i][j] == 0) continue;
      const Integer a = b[i][p], c = b[i][j];
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
      const Integer ag = divexact(a, g), cg = divexact(c, g);
      for (std::size_t row = 0; row < r; ++row) {
        Integer x = b[row][p], y = b[row][j];
        b[row][p] = s * x + t * y;
        b[row][j] = -cg * x + ag * y;
      }
      for (std::size_t col = 0; col < n; ++col) {
        Integer x = vinv[p][col], y = vinv[j][col];
        vinv[p][col] = ag * x + cg * y;
        vinv[j][col] = -t * x + s * y;
      }
    }
    if (b[i][p] != 0) ++p;
  }
  vinv.resize(p);
  return vinv;
}

}  // namespace qbar::lll
