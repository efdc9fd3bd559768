#include <doctest.h>

#include "helpers.hpp"

using namespace qbar;
using qbar::test::el;
using qbar::test::tower;

TEST_CASE("adjoin_sqrt pulls out square factors") {
  TowerContext out = TowerContext::rational();
  TowerElement r = adjoin_sqrt(TowerElement(TowerContext::rational(), Rational(8)), &out);
  REQUIRE(out.generator_count() == 1);
  CHECK(out.generator(0).square[0] == 2);
  CHECK(r.identical(el(out, "2*g1")));
  CHECK((r * r).equals(TowerElement(out, Rational(8))));
}

TEST_CASE("adjoin_sqrt of a rational square stays rational") {
  TowerContext out = TowerContext::rational();
  TowerElement r = adjoin_sqrt(TowerElement(TowerContext::rational(), Rational(9, 4)), &out);
  CHECK(out.generator_count() == 0);
  CHECK((r * r).equals(TowerElement(out, Rational(9, 4))));
}

TEST_CASE("adjoin_sqrt of zero") {
  CHECK_THROWS_AS(adjoin_sqrt(TowerElement()), Error);
}

TEST_CASE("inverse in Q(sqrt 2)") {
  auto k = tower({2});
  TowerElement x = el(k, "1+g1");
  CHECK(invert(x).identical(el(k, "-1+g1")));
  CHECK((x * invert(x)).is_one());
  CHECK_THROWS_AS(invert(TowerElement(k, Rational(0))), Error);
}

TEST_CASE("field norms") {
  auto k = tower({5});
  CHECK(field_norm(el(k, "3+2*g1")) == -11);
  TowerContext k2 = tower({2}).with_generator({Rational(0), Rational(1)});  // g2^2 = g1
  CHECK(field_norm(el(k2, "g2")) == -2);
  CHECK(field_norm(el(k2, "g1")) == 4);
  CHECK(trace(el(k2, "3+g2")) == 12);
}

TEST_CASE("pencil norm") {
  auto k = tower({2});
  auto p = pencil_norm(el(k, "1"), el(k, "g1"));
  REQUIRE(p.size() >= 3);
  CHECK(p[0] == 1);
  CHECK(p[1] == 0);
  CHECK(p[2] == -2);
  for (std::size_t i = 3; i < p.size(); ++i) CHECK(p[i] == 0);
}

TEST_CASE("relative conjugate") {
  auto k = tower({2, 3});
  TowerElement x = el(k, "1+g1+g2+g1*g2");
  TowerElement c = relative_conjugate(x);
  CHECK(c.identical(el(k, "1+g1-g2-g1*g2")));
  CHECK((x * c).support_level() <= 1);
}

TEST_CASE("square radicand is detected and remembered") {
  auto k = tower({2}).with_generator({Rational(3), Rational(2)});  // g2^2 = 3 + 2 g1 = (1 + g1)^2
  TowerElement z = el(k, "1+g1-g2");
  CHECK_THROWS_AS((void)z.is_zero(), SquareDetected);
  try {
    (void)invert(z);
    FAIL("expected SquareDetected");
  } catch (const SquareDetected& e) {
    CHECK(e.level == 1);
  }
}

TEST_CASE("with_square_retry reruns after a detection") {
  int calls = 0;
  int v = with_square_retry(0, [&] {
    if (++calls == 1) throw SquareDetected(1, {Rational(4)}, {Rational(2)});
    return 7;
  });
  CHECK(v == 7);
  CHECK(calls == 2);
  CHECK_THROWS_AS(with_square_retry(2, [&]() -> int { throw SquareDetected(1, {Rational(4)}, {Rational(2)}); }),
                  SquareDetected);
}

TEST_CASE("degree cap") {
  TowerContext ctx = TowerContext::rational(4);
  TowerContext c1 = ctx, c2 = ctx, c3 = ctx;
  adjoin_sqrt(TowerElement(ctx, Rational(2)), &c1);
  adjoin_sqrt(TowerElement(c1, Rational(3)), &c2);
  CHECK(c2.degree() == 4);
  try {
    adjoin_sqrt(TowerElement(c2, Rational(5)), &c3);
    FAIL("expected DegreeCapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degree_cap_exceeded);
  }
}

TEST_CASE("parser") {
  auto k = tower({2});
  CHECK(el(k, "(1+g1)^2").identical(el(k, "3+2*g1")));
  CHECK(el(k, "1/(1+g1)").identical(el(k, "g1-1")));
  CHECK(el(k, "-3/4").rational_value() == Rational(-3, 4));
  CHECK_THROWS_AS(el(k, "1+g3"), Error);
  CHECK_THROWS_AS(el(k, "1+*2"), Error);
  CHECK_THROWS_AS(el(k, "(1"), Error);
}

TEST_CASE("rational helpers") {
  auto s = squarefree_split(Integer(72));
  CHECK(s.root == 6);
  CHECK(s.core == 2);
  CHECK(s.complete);
  CHECK(compare_roots(Rational(8), 3, Rational(2), 1) == 0);
  CHECK(compare_roots(Rational(3), 2, Rational(2), 1) < 0);
  CHECK(parse_rational(" -6/4 ") == Rational(-3, 2));
}

TEST_CASE("unify of unrelated towers") {
  CHECK_THROWS_AS(unify(tower({2}), tower({3})), Error);
  CHECK(unify(tower({2}), TowerContext::rational()).generator_count() == 1);
}
