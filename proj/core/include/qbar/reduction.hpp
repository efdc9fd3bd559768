#pragma once

#include "qbar/certify.hpp"
#include "qbar/heights.hpp"

#include <memory>
#include <vector>

namespace qbar {

struct ReductionOptions {
  HeightOptions heights;
  CheckOptions checks;
  bool trace = false;
  Rational delta{99, 100};
};

// Basis of a subspace by lattice reduction, ascending in height.
struct SmallBasis {
  std::vector<Vector> vectors;
  std::vector<HeightValue> heights;  // H(x_i)
  std::vector<HeightValue> inhom;    // h(x_i)
  HeightValue subspace_height;
  BoundCertificate certificate;                 // siegel3 on the product of H(x_i)
  std::optional<BoundCertificate> inhom_chain;  // same bound with h(x_i), trace only
  bool exact_gram = true;                       // false when the reduction ran on a rounded Gram matrix

  Verdict roy_thunder_met() const { return certificate.verdict; }
  Interval log_product(unsigned bits) const;
};

// Memoised per subspace and options. ZeroObject on the zero subspace.
std::shared_ptr<const SmallBasis> small_basis(const Subspace& z, const ReductionOptions& opt = {});

// Deterministic order on vectors of equal height: earlier first nonzero
// coordinate first, then coefficientwise.
bool canonical_less(const Vector& a, const Vector& b);

// Orders by height (exact when possible), ties by canonical_less.
bool height_less(const HeightValue& ha, const Vector& a, const HeightValue& hb, const Vector& b);

}  // namespace qbar
