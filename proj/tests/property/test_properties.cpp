#include <doctest.h>

#include "helpers.hpp"

using namespace qbar;
using qbar::test::tower;

namespace {
using Rng = std::mt19937_64;

std::vector<TowerContext> contexts() {
  return {TowerContext::rational(), tower({2}), tower({-1}), tower({5}), tower({-7}), tower({2, 3}), tower({-1, 2})};
}

TowerElement nonzero(Rng& rng, const TowerContext& ctx) {
  for (;;) {
    TowerElement x = random::element(rng, ctx, 6);
    if (!x.is_zero()) return x;
  }
}
}  // namespace

TEST_CASE("field axioms on random elements") {
  Rng rng(101);
  for (const auto& ctx : contexts())
    for (int i = 0; i < 40; ++i) {
      TowerElement a = random::element(rng, ctx, 6), b = random::element(rng, ctx, 6), c = random::element(rng, ctx, 6);
      CHECK(((a * b) * c).equals(a * (b * c)));
      CHECK((a * (b + c)).equals(a * b + a * c));
      CHECK((a * b).equals(b * a));
      TowerElement x = nonzero(rng, ctx);
      CHECK((x * invert(x)).is_one());
      CHECK(((a / x) * x).equals(a));
      CHECK(field_norm(a * x) == field_norm(a) * field_norm(x));
      CHECK(trace(a + b) == trace(a) + trace(b));
    }
}

TEST_CASE("heights are at least one and h dominates H") {
  Rng rng(202);
  for (const auto& ctx : contexts())
    for (int i = 0; i < 15; ++i) {
      Vector x = random::vector(rng, 1 + rng() % 4, 9, ctx);
      HeightValue hv = height_vector(x), hi = height_inhom(x);
      CHECK(hv.hi() >= 1 - 1e-12);
      CHECK(hi.hi() >= hv.lo() * (1 - 1e-12));
    }
}

TEST_CASE("projective invariance") {
  Rng rng(303);
  for (const auto& ctx : contexts())
    for (int i = 0; i < 10; ++i) {
      Vector x = random::vector(rng, 3, 9, ctx);
      TowerElement a = nonzero(rng, ctx);
      HeightValue h1 = height_vector(x), h2 = height_vector(scale(a, x));
      CHECK(h1.lo() <= h2.hi() * (1 + 1e-20));
      CHECK(h2.lo() <= h1.hi() * (1 + 1e-20));
      if (h1.exact() && h2.exact()) CHECK(compare_heights(h1, h2) == 0);
    }
}

TEST_CASE("base change invariance") {
  Rng rng(404);
  TowerContext big = tower({2, 3});
  TowerContext small = big.prefix(1);
  for (int i = 0; i < 20; ++i) {
    Vector x = random::vector(rng, 3, 9, small);
    HeightValue h1 = height_vector(x), h2 = height_vector(lift(x, big));
    CHECK(h1.finite_part() == h2.finite_part());
    CHECK(h1.lo() <= h2.hi());
    CHECK(h2.lo() <= h1.hi());
  }
}

TEST_CASE("subspace duality and Hadamard") {
  Rng rng(505);
  auto q = TowerContext::rational();
  for (int i = 0; i < 30; ++i) {
    std::size_t n = 2 + rng() % 4, d = 1 + rng() % (n - 1);
    Subspace z = random::subspace(rng, n, d, 7, q);
    Subspace perp(n, equations(z), q);
    CHECK(compare_heights(height_subspace(z), height_subspace(perp)) == 0);
    double prod = 1;
    for (const auto& b : z.basis()) prod *= height_vector(b).hi();
    CHECK(height_subspace(z).lo() <= prod * (1 + 1e-12));
  }
}

TEST_CASE("small bases span and sort") {
  Rng rng(606);
  for (const auto& ctx : {TowerContext::rational(), tower({2}), tower({-1})})
    for (int i = 0; i < 10; ++i) {
      std::size_t n = 2 + rng() % 4, d = 1 + rng() % n;
      Subspace z = random::subspace(rng, n, d, 9, ctx);
      auto sb = small_basis(z);
      REQUIRE(sb->vectors.size() == d);
      CHECK(Subspace(n, sb->vectors, ctx) == z);
      for (std::size_t j = 1; j < d; ++j) CHECK(compare_heights(sb->heights[j - 1], sb->heights[j]) <= 0);
      if (ctx.generator_count() == 0) CHECK(sb->certificate.verdict == Verdict::verified);
    }
}

TEST_CASE("reflections are involutive isometries") {
  Rng rng(707);
  for (const auto& ctx : {TowerContext::rational(), tower({3})})
    for (int i = 0; i < 15; ++i) {
      std::size_t n = 2 + rng() % 3;
      QuadraticSpace q = QuadraticSpace::full(random::symmetric(rng, n, 5, ctx));
      Vector x = random::vector(rng, n, 5, ctx);
      if (evaluate(q, x).is_zero()) continue;
      Reflection r = reflection(q, x);
      CHECK(is_isometry(q, r.iso.matrix()));
      CHECK((r.iso.matrix() * r.iso.matrix()).identical(Matrix::identity(n, r.iso.matrix().context())));
      CHECK(is_zero_vector(add(r.iso.matrix() * x, x)));
    }
}

TEST_CASE("unimodular matrices") {
  Rng rng(808);
  auto q = TowerContext::rational();
  for (int i = 0; i < 20; ++i) {
    Matrix u = random::unimodular(rng, 4, 3, q);
    Rational d = determinant(u).rational_value();
    CHECK(abs(d) == 1);
  }
}

TEST_CASE("bound right-hand sides are monotone in heights") {
  auto q = TowerContext::rational();
  Rng rng(909);
  for (const auto& id : {"qz_bound", "bezout", "matrix_pm", "hf_vs_curly", "siegel3", "vaaler_even", "vaaler_odd"}) {
    HeightValue small = height_vector(random::vector(rng, 3, 3, q));
    HeightValue big = height_vector(random::vector(rng, 3, 30, q));
    if (compare_heights(small, big) > 0) std::swap(small, big);
    BoundParams a, b;
    for (auto* k : {"HF", "HW", "HA", "HZ"}) {
      a.set(k, small);
      b.set(k, big);
    }
    a.set("L", 3L).set("k", 2L);
    b.set("L", 3L).set("k", 2L);
    CHECK(bound_rhs_log(id, a, 128).lo_double() <= bound_rhs_log(id, b, 128).hi_double());
  }
}

TEST_CASE("no verdict flips under precision escalation") {
  auto q = TowerContext::rational();
  Rng rng(1010);
  for (int i = 0; i < 40; ++i) {
    Vector x = random::vector(rng, 3, 9, q);
    BoundParams p;
    p.set("HF", height_vector(random::vector(rng, 3, 9, q)));
    LogProduct lhs = LogProduct::of(height_vector(x));
    Verdict prev = Verdict::inconclusive;
    for (unsigned bits : {64u, 128u, 512u}) {
      CheckOptions o;
      o.bits_start = o.bits_max = bits;
      Verdict v = check("qz_bound", lhs, p, o).verdict;
      if (prev != Verdict::inconclusive) CHECK(v == prev);
      if (v != Verdict::inconclusive) prev = v;
    }
  }
}

TEST_CASE("interval enclosures contain the double result") {
  Rng rng(1111);
  for (int i = 0; i < 100; ++i) {
    Rational a = random::rational(rng, 1000);
    if (a <= 0) a = -a + 1;
    Interval x(a, 96);
    double d = a.get_d();
    CHECK(sqrt(x).lo_double() <= std::sqrt(d) * (1 + 1e-15));
    CHECK(sqrt(x).hi_double() >= std::sqrt(d) * (1 - 1e-15));
    CHECK(log(x).lo_double() <= std::log(d) + 1e-14);
    CHECK(log(x).hi_double() >= std::log(d) - 1e-14);
  }
}
