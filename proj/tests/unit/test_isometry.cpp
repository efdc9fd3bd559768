#include <doctest.h>

#include "helpers.hpp"

using namespace qbar;
using qbar::test::mat;
using qbar::test::span;
using qbar::test::tower;
using qbar::test::vec;

namespace {
const TowerContext Q = TowerContext::rational();

Matrix recompose(const std::vector<Reflection>& rs, std::size_t n, const TowerContext& ctx) {
  Matrix m = Matrix::identity(n, ctx);
  for (const auto& r : rs) m = m * r.iso.matrix();
  return m;
}
}  // namespace

TEST_CASE("reflection for x1x2 at e1 + e2") {
  QuadraticSpace q = QuadraticSpace::full(mat(Q, {{"0", "1/2"}, {"1/2", "0"}}));
  Reflection r = reflection(q, vec(Q, {"1", "1"}));
  CHECK(r.iso.matrix().identical(mat(Q, {{"0", "-1"}, {"-1", "0"}})));
  CHECK_FALSE(r.iso.rotation());
  CHECK((r.iso.matrix() * r.iso.matrix()).identical(Matrix::identity(2, Q)));
  CHECK_THROWS_AS(reflection(q, vec(Q, {"1", "0"})), Error);
}

TEST_CASE("isometry recognition") {
  QuadraticSpace q = QuadraticSpace::full(mat(Q, {{"1", "0"}, {"0", "1"}}));
  CHECK(is_isometry(q, mat(Q, {{"3/5", "-4/5"}, {"4/5", "3/5"}})));
  CHECK_FALSE(is_isometry(q, mat(Q, {{"2", "0"}, {"0", "2"}})));
  Isometry rot(q, mat(Q, {{"3/5", "-4/5"}, {"4/5", "3/5"}}));
  CHECK(rot.rotation());
  try {
    Isometry bad(q, mat(Q, {{"2", "0"}, {"0", "2"}}));
    FAIL("expected NotAnIsometry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_an_isometry);
  }
}

TEST_CASE("compose checks the domain") {
  QuadraticSpace a = QuadraticSpace::full(mat(Q, {{"1", "0"}, {"0", "1"}}));
  QuadraticSpace b = QuadraticSpace::full(mat(Q, {{"1", "0"}, {"0", "-1"}}));
  Isometry ia = Isometry::identity(a), ib = Isometry::identity(b);
  CHECK(compose(ia, ia).matrix().identical(Matrix::identity(2, Q)));
  CHECK_THROWS_AS(compose(ia, ib), Error);
}

TEST_CASE("Cartan-Dieudonne for -id on the plane") {
  Session s;
  QuadraticSpace q = QuadraticSpace::full(mat(Q, {{"1", "0"}, {"0", "1"}}));
  Isometry minus(q, mat(Q, {{"-1", "0"}, {"0", "-1"}}));
  auto rs = cartan_dieudonne(q, minus, s);
  CHECK(rs.size() == 2);
  CHECK(agree_on(minus, recompose(rs, 2, Q)));
  for (const auto& c : s.certificates.items) CHECK(c.verdict == Verdict::verified);
}

TEST_CASE("Cartan-Dieudonne for the identity") {
  Session s;
  QuadraticSpace q = QuadraticSpace::full(mat(Q, {{"1", "0", "0"}, {"0", "2", "0"}, {"0", "0", "-3"}}));
  CHECK(cartan_dieudonne(q, Isometry::identity(q), s).empty());
}

TEST_CASE("Cartan-Dieudonne on a subspace") {
  Session s;
  Matrix f = mat(Q, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  QuadraticSpace q(f, span(Q, 3, {{"1", "0", "0"}, {"0", "1", "0"}}));
  Matrix a = mat(Q, {{"3/5", "-4/5", "0"}, {"4/5", "3/5", "0"}, {"0", "0", "1"}});
  Isometry sigma(q, a);
  auto rs = cartan_dieudonne(q, sigma, s);
  CHECK(rs.size() >= 1);
  CHECK(rs.size() <= 3);
  CHECK(agree_on(sigma, recompose(rs, 3, Q)));
}

TEST_CASE("Cartan-Dieudonne needs a regular space") {
  Session s;
  QuadraticSpace q = QuadraticSpace::full(mat(Q, {{"1", "0"}, {"0", "0"}}));
  try {
    cartan_dieudonne(q, Isometry::identity(q), s);
    FAIL("expected NotRegular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_regular);
  }
}

TEST_CASE("small reflection is an isometry with a surrogate height certificate") {
  Session s;
  QuadraticSpace q = QuadraticSpace::full(mat(Q, {{"0", "1/2", "0"}, {"1/2", "0", "0"}, {"0", "0", "5"}}));
  Reflection r = small_reflection(q, s);
  CHECK(is_isometry(q, r.iso.matrix()));
  bool seen = false;
  for (const auto& c : s.certificates.items)
    if (c.bound_id == "ref_bound") {
      seen = true;
      CHECK(std::find(c.caveats.begin(), c.caveats.end(), "surrogate-isometry-height") != c.caveats.end());
    }
  CHECK(seen);
}

TEST_CASE("reflections over a quadratic tower") {
  auto k = tower({3});
  QuadraticSpace q = QuadraticSpace::full(mat(k, {{"1", "g1"}, {"g1", "-1"}}));
  Reflection r = reflection(q, vec(k, {"1", "0"}));
  CHECK(is_isometry(q, r.iso.matrix()));
  Session s;
  auto rs = cartan_dieudonne(q, r.iso, s);
  CHECK(rs.size() <= 3);
  CHECK(agree_on(r.iso, recompose(rs, 2, k)));
}
