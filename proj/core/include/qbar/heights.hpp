#pragma once

#include "qbar/interval.hpp"
#include "qbar/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>

namespace qbar {

struct HeightOptions {
  unsigned trials = 8;              // random pencil trials on top of the fixed pool
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  unsigned bits = 128;
  unsigned max_bits = 4096;
};

// Exact finite part of a height, stored as `power` = value^degree.
struct FinitePart {
  Rational power{1};
  unsigned long degree = 1;

  Interval log_enclosure(unsigned bits) const;  // log(value)
  double value() const;
  friend bool operator==(const FinitePart& a, const FinitePart& b) {
    return compare_roots(a.power, a.degree, b.power, b.degree) == 0;
  }
};

// Prime-by-prime record of the contents seen while computing a finite part.
struct PrimeContentTable {
  std::map<Integer, long> exponents;  // finite part^degree = prod p^e
  Integer cofactor{1};                // unfactored remainder (numerator side)
};
PrimeContentTable prime_contents(const FinitePart& fp);

FinitePart finite_part(std::span<const TowerElement> x, const HeightOptions& opt = {});
// Direct paths, exposed for cross-checking.
FinitePart finite_part_rational(std::span<const TowerElement> x);
FinitePart finite_part_quadratic(std::span<const TowerElement> x);  // ideal norm in the maximal order
FinitePart finite_part_gauss(std::span<const TowerElement> x, const HeightOptions& opt = {});

// Absolute Weil height with a certified enclosure of its logarithm.
class HeightValue {
 public:
  HeightValue();  // height 1 (exact)

  const FinitePart& finite_part() const { return fp_; }
  const Interval& log_enclosure() const { return log_; }
  unsigned bits() const { return bits_; }
  double lo() const;
  double hi() const;
  double mid() const;

  // H^(2d) = finite_part^(2d) * S exactly, for totally real towers
  bool exact() const { return arch_.has_value(); }
  const std::optional<Rational>& archimedean_norm() const { return arch_; }
  unsigned long archimedean_degree() const { return arch_degree_; }

  HeightValue refined(unsigned bits) const;

 private:
  friend HeightValue height_vector(std::span<const TowerElement>, const HeightOptions&);
  FinitePart fp_;
  std::optional<Rational> arch_;
  unsigned long arch_degree_ = 1;
  Interval log_{128};
  unsigned bits_ = 128;
  unsigned max_bits_ = 4096;
  std::shared_ptr<const Vector> source_;
};

// -1, 0, 1; exact when both heights are exact, else by enclosure midpoints
int compare_heights(const HeightValue& a, const HeightValue& b);

HeightValue height_vector(std::span<const TowerElement> x, const HeightOptions& opt = {});
HeightValue height_inhom(std::span<const TowerElement> x, const HeightOptions& opt = {});
HeightValue height_subspace(const Subspace& z, const HeightOptions& opt = {});
HeightValue height_gram(const Matrix& f, const HeightOptions& opt = {});
HeightValue height_form_poly(const Matrix& f, const HeightOptions& opt = {});
// flattening used by height_gram / height_form_poly
Vector gram_entries(const Matrix& f);
Vector form_coefficients(const Matrix& f);

}  // namespace qbar
