#pragma once

#include "qbar/quadspace.hpp"

#include <vector>

namespace qbar {

struct Reflection;
class Isometry;
Reflection reflection(const QuadraticSpace& q, const Vector& x);

class Isometry {
 public:
  Isometry() = default;
  // NotAnIsometry unless A^T F A = F, A Z = Z and det A = +-1
  Isometry(const QuadraticSpace& domain, Matrix a);
  static Isometry identity(const QuadraticSpace& domain);

  const Matrix& matrix() const { return a_; }
  const QuadraticSpace& domain() const { return q_; }
  const TowerElement& determinant() const { return det_; }
  bool rotation() const { return det_.is_one(); }

 private:
  struct Unchecked {};
  Isometry(const QuadraticSpace& domain, Matrix a, TowerElement det, Unchecked) : q_(domain), a_(std::move(a)), det_(std::move(det)) {}
  friend Reflection reflection(const QuadraticSpace& q, const Vector& x);
  QuadraticSpace q_;
  Matrix a_;
  TowerElement det_;
};

struct Reflection {
  Vector x;
  Isometry iso;
};

bool is_isometry(const QuadraticSpace& q, const Matrix& a);
// sigma after tau; DomainMismatch when the spaces differ
Isometry compose(const Isometry& sigma, const Isometry& tau, Session* s = nullptr);
HeightValue isometry_height(const Isometry& sigma, const HeightOptions& opt = {});
// sigma and tau agree on Z
bool agree_on(const Isometry& sigma, const Matrix& a);

struct AnisotropicPick {
  Vector y;
  int sign = -1;  // sigma(y) + sign * y is anisotropic
  bool deterministic = true;
};
AnisotropicPick small_anisotropic(const QuadraticSpace& q, const Isometry& sigma, Session& s);

Reflection small_reflection(const QuadraticSpace& q, Session& s);

// sigma = tau_1 o ... o tau_l on Z, l <= 2L - 1; empty for the identity
std::vector<Reflection> cartan_dieudonne(const QuadraticSpace& q, const Isometry& sigma, Session& s);

}  // namespace qbar
