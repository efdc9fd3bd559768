#include <doctest.h>

#include "helpers.hpp"

using namespace qbar;
using qbar::test::span;
using qbar::test::tower;
using qbar::test::vec;

namespace {
void check_basis(const Subspace& z, const SmallBasis& sb) {
  REQUIRE(sb.vectors.size() == z.dim());
  CHECK(Subspace(z.ambient(), sb.vectors, z.context()) == z);
  for (std::size_t i = 1; i < sb.heights.size(); ++i) CHECK(compare_heights(sb.heights[i - 1], sb.heights[i]) <= 0);
}
}  // namespace

TEST_CASE("small basis of a rational plane") {
  auto q = TowerContext::rational();
  Subspace z = span(q, 3, {{"1", "0", "100"}, {"0", "1", "-99"}});
  auto sb = small_basis(z);
  check_basis(z, *sb);
  CHECK(sb->certificate.bound_id == "siegel3");
  CHECK(sb->certificate.verdict == Verdict::verified);
  CHECK(sb->exact_gram);
  // (1, 1, 1) lies in z and is the shortest primitive vector
  CHECK(qbar::test::proportional(sb->vectors[0], vec(q, {"1", "1", "1"})));
}

TEST_CASE("small basis is memoised and deterministic") {
  auto q = TowerContext::rational();
  Subspace z = span(q, 4, {{"3", "1", "4", "1"}, {"5", "9", "2", "6"}});
  auto a = small_basis(z);
  auto b = small_basis(z);
  CHECK(a.get() == b.get());
  Subspace z2 = span(q, 4, {{"5", "9", "2", "6"}, {"3", "1", "4", "1"}});
  auto c = small_basis(z2);
  REQUIRE(c->vectors.size() == a->vectors.size());
  for (std::size_t i = 0; i < c->vectors.size(); ++i) CHECK(identical(c->vectors[i], a->vectors[i]));
}

TEST_CASE("small basis over a real quadratic field") {
  auto k = tower({5});
  Subspace z = span(k, 3, {{"1", "g1", "0"}, {"0", "1", "g1"}});
  auto sb = small_basis(z);
  check_basis(z, *sb);
  CHECK(sb->certificate.verdict == Verdict::verified);
}

TEST_CASE("small basis of a line") {
  auto q = TowerContext::rational();
  Subspace z = span(q, 3, {{"2/3", "4/3", "2"}});
  auto sb = small_basis(z);
  check_basis(z, *sb);
  CHECK(qbar::test::encloses(sb->heights[0], std::sqrt(14.0)));
}

TEST_CASE("zero subspace") {
  auto q = TowerContext::rational();
  CHECK_THROWS_AS(small_basis(Subspace::zero(3, q)), Error);
}

TEST_CASE("canonical order") {
  auto q = TowerContext::rational();
  CHECK(canonical_less(vec(q, {"0", "1"}), vec(q, {"1", "0"})) != canonical_less(vec(q, {"1", "0"}), vec(q, {"0", "1"})));
  CHECK_FALSE(canonical_less(vec(q, {"1", "2"}), vec(q, {"1", "2"})));
}
