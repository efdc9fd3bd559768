#pragma once

#include "qbar/session.hpp"

#include <optional>
#include <vector>

namespace qbar {

// A symmetric bilinear form on K^N together with a subspace Z.
class QuadraticSpace {
 public:
  QuadraticSpace() = default;
  QuadraticSpace(Matrix gram, Subspace z);  // AsymmetricGram, AmbientMismatch
  static QuadraticSpace full(Matrix gram);

  std::size_t ambient() const { return gram_.rows(); }
  std::size_t dim() const { return z_.dim(); }
  const Matrix& gram() const { return gram_; }
  const Subspace& space() const { return z_; }
  TowerContext context() const { return unify(gram_.context(), z_.context()); }

  const Matrix& restricted_gram() const { return cache_->restricted; }  // X^T F X, canonical basis
  bool regular() const { return cache_->regular; }
  std::size_t rank() const { return cache_->rank; }
  // dimension of a maximal totally isotropic subspace: (L - r) + floor(r / 2)
  std::size_t witt_index() const { return dim() - rank() + rank() / 2; }
  const Subspace& radical() const;

  QuadraticSpace with_space(const Subspace& z) const { return QuadraticSpace(gram_, z); }

 private:
  struct Cache {
    Matrix restricted;
    std::size_t rank = 0;
    bool regular = false;
    std::optional<Subspace> radical;
  };
  Matrix gram_;
  Subspace z_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

TowerElement evaluate(const QuadraticSpace& q, const Vector& x);
TowerElement evaluate(const QuadraticSpace& q, const Vector& x, const Vector& y);
TowerElement bilinear(const Matrix& f, const Vector& x, const Vector& y);

struct RadicalSplit {
  Subspace radical;
  Subspace regular_part;
};
RadicalSplit radical_split(const QuadraticSpace& q, Session& s);

// Isotropic vector of the form (alpha, 1, 0, ...) or a basis vector.
Vector small_zero_free(const Matrix& f, Session& s);

Vector isotropic_in_space(const QuadraticSpace& q, Session& s);

struct IsotropicLevel {
  int level = 0;
  std::size_t k = 0;
  Subspace u, w, v1, v2;
  Vector w1, w2;
  HeightValue h1, h2;
  int chosen = 1;
};
struct MaxIsotropic {
  Subspace v;
  std::vector<IsotropicLevel> levels;
};
MaxIsotropic max_isotropic(const QuadraticSpace& q, Session& s);

struct HyperbolicPlane {
  Vector x, y;
  Subspace span;
};
HyperbolicPlane hyperbolic_pair(const QuadraticSpace& q, const Vector& x, Session& s);

struct WittDecomposition {
  Subspace radical;
  std::vector<HyperbolicPlane> planes;
  std::optional<Vector> anisotropic_line;
};
WittDecomposition witt_decompose(const QuadraticSpace& q, Session& s);

std::vector<Vector> orthogonal_basis(const QuadraticSpace& q, Session& s);

// Candidates from the small basis of Z, then z_i + z_j (and z_i - z_j when
// `differences`), then random integer combinations with growing coefficients.
// Returns the first accepted vector; `deterministic` is false for random ones.
struct PoolPick {
  Vector y;
  bool deterministic = true;
};
PoolPick search_pool(const QuadraticSpace& q, const std::function<bool(const Vector&)>& accept, bool differences,
                     Session& s);

// Exact checks used by tests and the harness.
bool totally_isotropic(const QuadraticSpace& q, const Subspace& v);
bool pairwise_orthogonal(const QuadraticSpace& q, const std::vector<Vector>& xs);
bool check_witt(const QuadraticSpace& q, const WittDecomposition& w);

}  // namespace qbar
