#pragma once

#include "qbar/campaign.hpp"
#include "qbar/isometry.hpp"
#include "qbar/random.hpp"
#include "qbar/suite.hpp"

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

namespace qbar::test {

// Q(sqrt d1)(sqrt d2)... with rational radicands
inline TowerContext tower(std::initializer_list<long> radicands) {
  TowerContext ctx = TowerContext::rational();
  for (long d : radicands) {
    std::vector<Rational> sq(std::size_t(1) << ctx.generator_count());
    sq[0] = d;
    ctx = ctx.with_generator(sq);
  }
  return ctx;
}

inline TowerElement el(const TowerContext& ctx, const std::string& s) { return parse_element(ctx, s); }

inline Vector vec(const TowerContext& ctx, std::initializer_list<std::string> xs) {
  Vector v;
  for (const auto& x : xs) v.push_back(parse_element(ctx, x));
  return v;
}

inline Matrix mat(const TowerContext& ctx, std::initializer_list<std::initializer_list<std::string>> rows) {
  std::vector<Vector> rs;
  for (auto r : rows) rs.push_back(vec(ctx, r));
  return Matrix::from_rows(rs);
}

inline Subspace span(const TowerContext& ctx, std::size_t n, std::initializer_list<std::initializer_list<std::string>> rows) {
  std::vector<Vector> rs;
  for (auto r : rows) rs.push_back(vec(ctx, r));
  return Subspace(n, rs, ctx);
}

inline bool encloses(const HeightValue& h, double value, double rel = 1e-12) {
  return h.lo() <= value * (1 + rel) && h.hi() >= value * (1 - rel);
}

inline bool same_vector(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].equals(b[i])) return false;
  return true;
}

// x and y span the same line
inline bool proportional(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  return true;
}

}  // namespace qbar::test
