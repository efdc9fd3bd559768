#pragma once

#include "qbar/rational.hpp"

#include <vector>

namespace qbar::lll {

using IntMatrix = std::vector<std::vector<Integer>>;

// Integral LLL driven by an exact positive definite Gram matrix. Returns the
// unimodular U with reduced basis = U * (original basis), rows as vectors.
IntMatrix reduce_gram(const IntMatrix& gram, const Rational& delta = Rational(99, 100));

// Reduces the rows of an integer matrix for the standard inner product.
IntMatrix reduce_rows(const IntMatrix& rows, const Rational& delta = Rational(99, 100));

// Basis of the saturation (Q-span intersected with Z^n) of the given rows;
// dependent rows are dropped.
IntMatrix saturate(const IntMatrix& rows);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

}  // namespace qbar::lll
