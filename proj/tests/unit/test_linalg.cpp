#include <doctest.h>

#include "helpers.hpp"
#include "qbar/lll.hpp"

using namespace qbar;
using qbar::test::el;
using qbar::test::mat;
using qbar::test::span;
using qbar::test::tower;
using qbar::test::vec;

TEST_CASE("determinant and rank") {
  auto q = TowerContext::rational();
  CHECK(determinant(mat(q, {{"1", "2"}, {"3", "4"}})).rational_value() == -2);
  CHECK(rank(mat(q, {{"1", "2", "3"}, {"2", "4", "6"}})) == 1);
  auto k = tower({2});
  CHECK(determinant(mat(k, {{"g1", "1"}, {"1", "g1"}})).equals(el(k, "1")));
  CHECK(rank(mat(k, {{"g1", "2"}, {"1", "g1"}})) == 1);
}

TEST_CASE("subspace canonical form") {
  auto q = TowerContext::rational();
  Subspace a = span(q, 3, {{"1", "0", "1"}, {"0", "1", "0"}});
  Subspace b = span(q, 3, {{"1", "1", "1"}, {"1", "-1", "1"}, {"2", "0", "2"}});
  CHECK(a.dim() == 2);
  CHECK(a == b);
  CHECK(contains(a, vec(q, {"3", "-2", "3"})));
  CHECK_FALSE(contains(a, vec(q, {"1", "0", "0"})));
}

TEST_CASE("kernel, intersection, sum") {
  auto q = TowerContext::rational();
  Subspace k = kernel(mat(q, {{"1", "1", "1"}}));
  CHECK(k.dim() == 2);
  CHECK(contains(k, vec(q, {"1", "-1", "0"})));
  Subspace u = span(q, 3, {{"1", "0", "0"}, {"0", "1", "0"}});
  Subspace v = span(q, 3, {{"0", "1", "0"}, {"0", "0", "1"}});
  CHECK(intersect(u, v) == span(q, 3, {{"0", "1", "0"}}));
  CHECK(sum(u, v) == Subspace::full(3, q));
  auto eq = equations(u);
  REQUIRE(eq.size() == 1);
  CHECK(qbar::test::proportional(eq[0], vec(q, {"0", "0", "1"})));
}

TEST_CASE("grassmann coordinates of a plane") {
  auto q = TowerContext::rational();
  Vector g = grassmann({vec(q, {"1", "2", "3"}), vec(q, {"4", "5", "6"})});
  REQUIRE(g.size() == 3);
  CHECK(g[0].rational_value() == -3);
  CHECK(g[1].rational_value() == -6);
  CHECK(g[2].rational_value() == -3);
}

TEST_CASE("constrained kernel and coordinates") {
  auto q = TowerContext::rational();
  Subspace z = Subspace::full(3, q);
  Subspace w = constrained_kernel(z, Matrix::from_columns({vec(q, {"1", "1", "0"})}));
  CHECK(w.dim() == 2);
  CHECK(contains(w, vec(q, {"1", "-1", "5"})));
  Subspace p = span(q, 3, {{"1", "1", "0"}, {"0", "0", "1"}});
  Vector c = coordinates(p, vec(q, {"2", "2", "7"}));
  REQUIRE(c.size() == 2);
  CHECK(c[0].rational_value() == 2);
  CHECK(c[1].rational_value() == 7);
}

TEST_CASE("ambient mismatch") {
  auto q = TowerContext::rational();
  CHECK_THROWS_AS(Subspace(3, {vec(q, {"1", "2"})}, q), Error);
}

TEST_CASE("lll on a small integer lattice") {
  lll::IntMatrix b = {{Integer(1), Integer(1), Integer(1)}, {Integer(-1), Integer(0), Integer(2)}, {Integer(3), Integer(5), Integer(6)}};
  lll::IntMatrix r = lll::reduce_rows(b);
  // reduced basis (0,1,0), (1,0,1), (-1,0,2) up to order and sign
  std::vector<Integer> norms;
  for (const auto& row : r) {
    Integer s = 0;
    for (const auto& x : row) s += x * x;
    norms.push_back(s);
  }
  std::sort(norms.begin(), norms.end());
  CHECK(norms == std::vector<Integer>{Integer(1), Integer(2), Integer(5)});
  auto q = TowerContext::rational();
  auto as_matrix = [&](const lll::IntMatrix& m) {
    std::vector<Vector> rows;
    for (const auto& row : m) {
      Vector v;
      for (const auto& x : row) v.emplace_back(q, Rational(x));
      rows.push_back(v);
    }
    return Matrix::from_rows(rows);
  };
  CHECK(abs(determinant(as_matrix(r)).rational_value()) == 3);
  lll::IntMatrix u = lll::reduce_gram({{Integer(2), Integer(1)}, {Integer(1), Integer(10)}});
  CHECK(abs(determinant(as_matrix(u)).rational_value()) == 1);
}

TEST_CASE("saturation") {
  lll::IntMatrix s = lll::saturate({{Integer(2), Integer(4)}});
  REQUIRE(s.size() == 1);
  CHECK(abs(s[0][0]) == 1);
  CHECK(abs(s[0][1]) == 2);
  lll::IntMatrix t = lll::saturate({{Integer(1), Integer(1)}, {Integer(1), Integer(-1)}, {Integer(2), Integer(0)}});
  CHECK(t.size() == 2);
}
