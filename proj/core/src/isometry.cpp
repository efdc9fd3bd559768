#include "qbar/isometry.hpp"

namespace qbar {

namespace {

const char* kSurrogate = "surrogate-isometry-height";

bool same_domain(const QuadraticSpace& a, const QuadraticSpace& b) {
  if (a.ambient() != b.ambient()) return false;
  for (std::size_t i = 0; i < a.ambient(); ++i)
    for (std::size_t j = 0; j < a.ambient(); ++j)
      if (!(a.gram()(i, j) - b.gram()(i, j)).is_zero()) return false;
  return a.space() == b.space();
}

bool zero_matrix(const Matrix& m) {
  for (const auto& e : m.entries())
    if (!e.is_zero()) return false;
  return true;
}

bool plus_minus_one(const TowerElement& d) {
  TowerElement one(d.context(), Rational(1));
  return (d - one).is_zero() || (d + one).is_zero();
}

}  // namespace

Isometry::Isometry(const QuadraticSpace& domain, Matrix a) : q_(domain), a_(std::move(a)) {
  if (!is_isometry(q_, a_)) fail(ErrorCode::not_an_isometry, "matrix is not an isometry of (Z, F)");
  det_ = qbar::determinant(a_);
}

Isometry Isometry::identity(const QuadraticSpace& domain) {
  TowerContext ctx = domain.context();
  return Isometry(domain, Matrix::identity(domain.ambient(), ctx), TowerElement(ctx, Rational(1)), Unchecked{});
}

bool is_isometry(const QuadraticSpace& q, const Matrix& a) {
  const std::size_t n = q.ambient();
  if (a.rows() != n || a.cols() != n) return false;
  if (!zero_matrix(a.transpose() * q.gram() * a - q.gram())) return false;
  for (const auto& z : q.space().basis())
    if (!contains(q.space(), a * z)) return false;
  return plus_minus_one(determinant(a));
}

Reflection reflection(const QuadraticSpace& q, const Vector& x) {
  const std::size_t n = q.ambient();
  if (x.size() != n) fail(ErrorCode::ambient_mismatch, "reflection vector has the wrong length");
  Vector fx = q.gram() * x;
  TowerElement c = dot(x, fx);
  if (c.is_zero()) fail(ErrorCode::anisotropic_required, "reflection at an isotropic vector");
  TowerElement k = invert(c) * Rational(2);
  TowerContext ctx = unify(q.context(), context_of(x));
  Matrix t(n, n, ctx);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      TowerElement v = -(k * x[i] * fx[j]);
      if (i == j) v += TowerElement(ctx, Rational(1));
      t(i, j) = v;
    }
  return Reflection{x, Isometry(q, std::move(t), TowerElement(ctx, Rational(-1)), Isometry::Unchecked{})};
}

Isometry compose(const Isometry& sigma, const Isometry& tau, Session* s) {
  if (!same_domain(sigma.domain(), tau.domain())) fail(ErrorCode::domain_mismatch, "isometries of different spaces");
  Isometry out(sigma.domain(), sigma.matrix() * tau.matrix());
  if (s && s->options.trace) {
    BoundParams p;
    p.set("HA", s->gram_height(sigma.matrix())).set("HB", s->gram_height(tau.matrix()));
    s->emit("matrix_prod", LogProduct::of(s->gram_height(out.matrix())), p, "compose");
  }
  return out;
}

HeightValue isometry_height(const Isometry& sigma, const HeightOptions& opt) {
  return height_gram(sigma.matrix(), opt);
}

bool agree_on(const Isometry& sigma, const Matrix& a) {
  for (const auto& z : sigma.domain().space().basis())
    if (!is_zero_vector(sub(sigma.matrix() * z, a * z))) return false;
  return true;
}

AnisotropicPick small_anisotropic(const QuadraticSpace& q, const Isometry& sigma, Session& s) {
  bool vanishes = true;
  for (const auto& e : q.restricted_gram().entries())
    if (!e.is_zero()) {
      vanishes = false;
      break;
    }
  if (vanishes) fail(ErrorCode::no_anisotropic_vector, "the form vanishes on Z");
  if (!q.regular()) fail(ErrorCode::not_regular, "small_anisotropic needs a regular space");
  int sign = -1;
  auto accept = [&](const Vector& y) {
    if (evaluate(q, y).is_zero()) return false;
    Vector sy = sigma.matrix() * y;
    if (!evaluate(q, sub(sy, y)).is_zero()) {
      sign = -1;
      return true;
    }
    if (!evaluate(q, add(sy, y)).is_zero()) {
      sign = 1;
      return true;
    }
    return false;
  };
  PoolPick pick = search_pool(q, accept, true, s);
  AnisotropicPick out{pick.y, sign, pick.deterministic};
  BoundParams p;
  p.set("L", static_cast<long>(q.dim())).set("HZ", s.height(q.space()));
  std::vector<std::string> cav;
  if (!pick.deterministic) cav.push_back("randomized-witness");
  s.emit("anis", LogProduct::of(s.inhom(out.y)), p, "small_anisotropic", 0, cav);
  return out;
}

Reflection small_reflection(const QuadraticSpace& q, Session& s) {
  if (!q.regular()) fail(ErrorCode::not_regular, "small_reflection needs a regular space");
  AnisotropicPick pick = small_anisotropic(q, Isometry::identity(q), s);
  Reflection r = reflection(q, pick.y);
  HeightValue ht = s.gram_height(r.iso.matrix()), hf = s.gram_height(q.gram());
  BoundParams p;
  p.set("L", static_cast<long>(q.dim()))
      .set("N", static_cast<long>(q.ambient()))
      .set("HF", hf)
      .set("HZ", s.height(q.space()));
  s.emit("isom_bound", LogProduct::of(ht), p, "small_reflection", 0, {kSurrogate});
  BoundParams pr;
  pr.set("N", static_cast<long>(q.ambient())).set("HF", hf).set("Hx", s.height(pick.y));
  s.emit("ref_bound", LogProduct::of(ht), pr, "small_reflection", 0, {kSurrogate});
  return r;
}

namespace {

void cd_rec(const QuadraticSpace& top, const QuadraticSpace& cur, const Matrix& a, Session& s, int level,
            std::vector<Reflection>& out) {
  bool fixed = true;
  for (const auto& z : cur.space().basis())
    if (!is_zero_vector(sub(a * z, z))) {
      fixed = false;
      break;
    }
  if (fixed) return;
  if (cur.dim() == 1) {
    out.push_back(reflection(top, cur.space().basis()[0]));
    return;
  }
  Isometry sigma(cur, a);
  AnisotropicPick pick = small_anisotropic(cur, sigma, s);
  const Vector& y = pick.y;
  Vector sy = a * y;
  Matrix next;
  const bool tracing = s.options.trace;
  BoundParams p;
  if (tracing) {
    p.set("L", static_cast<long>(cur.dim()))
        .set("N", static_cast<long>(cur.ambient()))
        .set("HF", s.gram_height(top.gram()))
        .set("HZ", s.height(cur.space()))
        .set("Hsigma", s.gram_height(a));
    BoundParams pm;
    pm.set("HA", s.gram_height(a));
    Matrix id = Matrix::identity(a.rows(), a.context());
    for (const Matrix& m : {a + id, a - id})
      if (!zero_matrix(m)) s.emit("matrix_pm", LogProduct::of(s.gram_height(m)), pm, "cartan_dieudonne", level);
  }
  if (pick.sign < 0) {
    Reflection t = reflection(top, sub(sy, y));
    next = t.iso.matrix() * a;
    if (tracing) s.emit("cd13", LogProduct::of(s.gram_height(t.iso.matrix())), p, "cartan_dieudonne", level, {kSurrogate});
    out.push_back(std::move(t));
  } else {
    Reflection t1 = reflection(top, sy);
    Reflection t2 = reflection(top, add(sy, y));
    next = t2.iso.matrix() * (t1.iso.matrix() * a);
    if (tracing) {
      s.emit("cd6", LogProduct::of(s.gram_height(t1.iso.matrix())), p, "cartan_dieudonne", level, {kSurrogate});
      s.emit("cd13", LogProduct::of(s.gram_height(t2.iso.matrix())), p, "cartan_dieudonne", level, {kSurrogate});
    }
    out.push_back(std::move(t1));
    out.push_back(std::move(t2));
  }
  Subspace z1 = constrained_kernel(cur.space(), Matrix::from_columns({top.gram() * y}));
  if (tracing) {
    s.emit("cd13_1", LogProduct::of(s.gram_height(next)), p, "cartan_dieudonne", level, {kSurrogate});
    s.emit("cd13_2", LogProduct::of(s.height(z1)), p, "cartan_dieudonne", level);
  }
  cd_rec(top, cur.with_space(z1), next, s, level + 1, out);
}

}  // namespace

std::vector<Reflection> cartan_dieudonne(const QuadraticSpace& q, const Isometry& sigma, Session& s) {
  if (!q.regular()) fail(ErrorCode::not_regular, "cartan_dieudonne needs a regular space");
  if (!is_isometry(q, sigma.matrix())) fail(ErrorCode::not_an_isometry, "matrix is not an isometry of (Z, F)");
  std::vector<Reflection> out;
  if (q.dim() == 0) return out;
  cd_rec(q, q, sigma.matrix(), s, 0, out);
  if (out.empty()) return out;
  BoundParams p;
  p.set("L", static_cast<long>(q.dim()))
      .set("N", static_cast<long>(q.ambient()))
      .set("HF", s.gram_height(q.gram()))
      .set("HZ", s.height(q.space()))
      .set("Hsigma", isometry_height(sigma, s.options.heights));
  int i = 0;
  for (const auto& r : out)
    s.emit("cd_bound", LogProduct::of(s.gram_height(r.iso.matrix())), p, "cartan_dieudonne", i++, {kSurrogate});
  return out;
}

}  // namespace qbar
