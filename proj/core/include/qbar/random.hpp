#pragma once

#include "qbar/linalg.hpp"

#include <random>

namespace qbar::random {

using Rng = std::mt19937_64;

long integer(Rng& rng, long lo, long hi);
// a/b with |a| <= bound, 1 <= b <= bound
Rational rational(Rng& rng, long bound);
// rational part plus small multiples of the generators of ctx
TowerElement element(Rng& rng, const TowerContext& ctx, long bound);
Vector integer_vector(Rng& rng, std::size_t n, long bound, const TowerContext& ctx);
Vector vector(Rng& rng, std::size_t n, long bound, const TowerContext& ctx);  // nonzero
Matrix symmetric(Rng& rng, std::size_t n, long bound, const TowerContext& ctx);  // nonzero
Matrix matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound, const TowerContext& ctx);
// `count` independent columns with integer entries in [-bound, bound]
std::vector<Vector> independent(Rng& rng, std::size_t n, std::size_t count, long bound, const TowerContext& ctx);
Subspace subspace(Rng& rng, std::size_t n, std::size_t dim, long bound, const TowerContext& ctx);
// product of elementary matrices and a sign, determinant +-1
Matrix unimodular(Rng& rng, std::size_t n, long bound, const TowerContext& ctx);

}  // namespace qbar::random
