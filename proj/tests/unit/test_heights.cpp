#include <doctest.h>

#include "helpers.hpp"

using namespace qbar;
using qbar::test::encloses;
using qbar::test::mat;
using qbar::test::span;
using qbar::test::tower;
using qbar::test::vec;

namespace {
FinitePart fp(Rational power, unsigned long degree) { return FinitePart{std::move(power), degree}; }
}  // namespace

TEST_CASE("finite parts over Q") {
  auto q = TowerContext::rational();
  CHECK(finite_part(vec(q, {"3", "6"})) == fp(Rational(1, 3), 1));
  CHECK(finite_part(vec(q, {"1/2", "3"})) == fp(Rational(2), 1));
  CHECK(finite_part_rational(vec(q, {"10/3", "4/9", "0"})) == fp(Rational(9, 2), 1));
}

TEST_CASE("finite parts over quadratic fields") {
  auto k3 = tower({3});
  CHECK(finite_part(vec(k3, {"2", "2*g1"})) == fp(Rational(1, 2), 1));
  // (1 + i, 2) = (1 + i), norm 2
  auto ki = tower({-1});
  CHECK(finite_part_quadratic(vec(ki, {"1+g1", "2"})) == fp(Rational(1, 2), 2));
  CHECK(finite_part_gauss(vec(ki, {"1+g1", "2"})) == fp(Rational(1, 2), 2));
  // (3, 1 + sqrt -2) = (1 + sqrt -2), norm 3
  auto k2 = tower({-2});
  CHECK(finite_part(vec(k2, {"3", "1+g1"})) == fp(Rational(1, 3), 2));
  // 1 + sqrt -3 = 2 * unit in the maximal order
  auto k = tower({-3});
  CHECK(finite_part_quadratic(vec(k, {"2", "1+g1"})) == fp(Rational(1, 2), 1));
  CHECK(finite_part_gauss(vec(k, {"2", "1+g1"})) == fp(Rational(1, 2), 1));
}

TEST_CASE("vector heights") {
  auto q = TowerContext::rational();
  HeightValue h = height_vector(vec(q, {"3", "4"}));
  CHECK(h.exact());
  CHECK(encloses(h, 5.0));
  CHECK(encloses(height_inhom(vec(q, {"3", "4"})), 5.0990195135927848300));
  CHECK(encloses(height_vector(vec(tower({2}), {"1", "g1"})), 1.7320508075688772935));
  CHECK(encloses(height_vector(vec(tower({-1}), {"1", "g1"})), 1.4142135623730950488));
  CHECK(encloses(height_vector(vec(tower({-3}), {"2", "1+g1"})), 1.4142135623730950488));
  CHECK(encloses(height_vector(vec(tower({-2}), {"3", "1+g1"})), 2.0));
  CHECK(encloses(height_vector(vec(tower({-1}), {"1+g1", "2"})), 1.7320508075688772935));
  CHECK(encloses(height_vector(vec(tower({2, 3}), {"1", "g1+g2"})), 1.8612097182041991979));
  auto k = tower({2}).with_generator({Rational(0), Rational(1)});
  CHECK(encloses(height_vector(vec(k, {"1", "g2"})), 1.5537739740300373073));
}

TEST_CASE("subspace heights") {
  auto q = TowerContext::rational();
  CHECK(encloses(height_subspace(span(q, 3, {{"1", "0", "1"}, {"0", "1", "0"}})), 1.4142135623730950488));
  CHECK(encloses(height_subspace(kernel(mat(q, {{"1", "1", "1"}}))), 1.7320508075688772935));
  CHECK(encloses(height_subspace(span(q, 3, {{"1", "2", "3"}, {"4", "5", "6"}})), 2.4494897427831780982));
  CHECK(encloses(height_subspace(Subspace::full(4, q)), 1.0));
}

TEST_CASE("form heights") {
  auto q = TowerContext::rational();
  Matrix f = mat(q, {{"1", "0"}, {"0", "-1"}});
  CHECK(encloses(height_gram(f), 1.4142135623730950488));
  Matrix g = mat(q, {{"2", "1"}, {"1", "2"}});
  CHECK(encloses(height_gram(g), 3.1622776601683793320));
  CHECK(encloses(height_form_poly(g), 1.7320508075688772935));
  Matrix h = mat(q, {{"0", "1/2"}, {"1/2", "0"}});
  CHECK(encloses(height_form_poly(h), 1.0));
  CHECK(encloses(height_gram(h), 1.4142135623730950488));
}

TEST_CASE("zero objects") {
  auto q = TowerContext::rational();
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::proof_gap;
  };
  CHECK(code([&] { height_vector(vec(q, {"0", "0"})); }) == ErrorCode::zero_vector);
  CHECK(code([&] { height_gram(mat(q, {{"0", "0"}, {"0", "0"}})); }) == ErrorCode::zero_object);
}

TEST_CASE("compare heights") {
  auto q = TowerContext::rational();
  CHECK(compare_heights(height_vector(vec(q, {"3", "4"})), height_vector(vec(q, {"5", "0", "0"}))) > 0);
  CHECK(compare_heights(height_vector(vec(q, {"3", "4"})), height_vector(vec(q, {"6", "8"}))) == 0);
  CHECK(compare_heights(height_vector(vec(q, {"1", "1"})), height_vector(vec(q, {"1", "2"}))) < 0);
}

TEST_CASE("prime content table") {
  auto t = prime_contents(fp(Rational(1, 12), 1));
  CHECK(t.exponents.size() == 2);
  CHECK(t.exponents.count(Integer(2)) == 1);
  CHECK(t.exponents.count(Integer(3)) == 1);
}
