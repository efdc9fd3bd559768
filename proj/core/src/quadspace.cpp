#include "qbar/quadspace.hpp"

#include <algorithm>

namespace qbar {

namespace {

LogProduct lp(const HeightValue& h) { return LogProduct::of(h); }

Matrix image_columns(const Matrix& f, const std::vector<Vector>& xs) {
  std::vector<Vector> cols;
  for (const auto& x : xs) cols.push_back(f * x);
  if (cols.empty()) return Matrix(f.rows(), 0, f.context());
  return Matrix::from_columns(cols);
}

Subspace span_of(std::size_t n, const std::vector<Vector>& xs, const TowerContext& ctx) {
  return Subspace(n, xs, unify(ctx, context_of(xs)));
}

Vector combine(const TowerElement& a, const Vector& x, const TowerElement& b, const Vector& y) {
  return add(scale(a, x), scale(b, y));
}

bool independent_of(const std::vector<Vector>& base, const Vector& x, std::size_t n) {
  std::vector<Vector> rows = base;
  rows.push_back(x);
  return rref(rows, n).rows.size() == rows.size();
}

}  // namespace

// ---------------------------------------------------------------- spaces

QuadraticSpace::QuadraticSpace(Matrix gram, Subspace z) : gram_(std::move(gram)), z_(std::move(z)) {
  if (gram_.rows() != gram_.cols()) fail(ErrorCode::ambient_mismatch, "Gram matrix is not square");
  if (gram_.rows() != z_.ambient()) fail(ErrorCode::ambient_mismatch, "Gram matrix and subspace differ in ambient");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = i + 1; j < gram_.cols(); ++j)
      if (!(gram_(i, j) - gram_(j, i)).is_zero())
        fail(ErrorCode::asymmetric_gram, "entries (" + std::to_string(i) + "," + std::to_string(j) + ") differ");
  const std::size_t L = z_.dim();
  if (L == 0) {
    cache_->restricted = Matrix(0, 0, context());
    cache_->regular = true;
    cache_->radical = z_;
    return;
  }
  Matrix x = z_.basis_columns();
  cache_->restricted = x.transpose() * (gram_ * x);
  cache_->rank = qbar::rank(cache_->restricted);
  cache_->regular = cache_->rank == L;
  cache_->radical = cache_->regular ? Subspace::zero(ambient(), context())
                                    : constrained_kernel(z_, gram_ * x);
}

QuadraticSpace QuadraticSpace::full(Matrix gram) {
  const std::size_t n = gram.rows();
  TowerContext ctx = gram.context();
  return QuadraticSpace(std::move(gram), Subspace::full(n, ctx));
}

const Subspace& QuadraticSpace::radical() const { return *cache_->radical; }

TowerElement bilinear(const Matrix& f, const Vector& x, const Vector& y) {
  if (x.size() != f.rows() || y.size() != f.rows())
    fail(ErrorCode::ambient_mismatch, "vector length differs from the form's size");
  return dot(x, f * y);
}

TowerElement evaluate(const QuadraticSpace& q, const Vector& x) { return bilinear(q.gram(), x, x); }
TowerElement evaluate(const QuadraticSpace& q, const Vector& x, const Vector& y) { return bilinear(q.gram(), x, y); }

// ---------------------------------------------------------------- radical

RadicalSplit radical_split(const QuadraticSpace& q, Session& s) {
  const std::size_t n = q.ambient(), L = q.dim();
  if (q.regular()) return {Subspace::zero(n, q.context()), q.space()};
  auto sb = s.small_basis(q.space());
  const auto& xs = sb->vectors;
  // columns of the restricted Gram matrix that span its column space pick a
  // regular complement of the radical
  std::vector<Vector> cols, chosen;
  for (std::size_t j = 0; j < L; ++j) {
    Vector c;
    for (std::size_t i = 0; i < L; ++i) c.push_back(bilinear(q.gram(), xs[i], xs[j]));
    if (is_zero_vector(c) || !independent_of(cols, c, L)) continue;
    cols.push_back(std::move(c));
    chosen.push_back(xs[j]);
  }
  RadicalSplit out{q.radical(), span_of(n, chosen, q.context())};
  if (!q.with_space(out.regular_part).regular())
    fail(ErrorCode::not_regular, "regular complement failed the exact check");

  HeightValue hf = s.gram_height(q.gram()), hz = s.height(q.space());
  BoundParams p;
  p.set("L", static_cast<long>(L)).set("r", static_cast<long>(q.rank())).set("HF", hf).set("HZ", hz);
  s.emit("regular2", lp(s.height(out.radical)), p, "radical_split");
  if (out.regular_part.dim() > 0) s.emit("regular3", lp(s.height(out.regular_part)), p, "radical_split");
  return out;
}

// ---------------------------------------------------------------- small zeros

Vector small_zero_free(const Matrix& f, Session& s) {
  const std::size_t n = f.rows();
  if (n < 2) fail(ErrorCode::dimension_too_small, "a zero of a form needs at least two variables");
  TowerContext ctx = f.context();
  bool zero = true;
  for (const auto& e : f.entries())
    if (!e.is_zero()) {
      zero = false;
      break;
    }
  if (zero) {
    s.notes.push_back("ZeroForm: form vanishes identically, returning e1");
    return unit_vector(n, 0, ctx);
  }
  Vector x;
  for (std::size_t i = 0; i < n && x.empty(); ++i)
    if (f(i, i).is_zero()) x = unit_vector(n, i, ctx);
  if (x.empty()) {
    const TowerElement& a = f(0, 0);
    const TowerElement& b = f(0, 1);
    const TowerElement& c = f(1, 1);
    TowerContext ext = ctx;
    TowerElement r = adjoin_sqrt(b * b - a * c, &ext);
    TowerElement alpha = (r - b) / a;
    x = unit_vector(n, 1, ext);
    x[0] = alpha.lift(unify(ext, alpha.context()));
  }
  BoundParams p;
  p.set("HF", s.gram_height(f));
  s.emit("qz_bound", lp(s.height(x)), p, "small_zero_free");
  return x;
}

Vector isotropic_in_space(const QuadraticSpace& q, Session& s) {
  const std::size_t L = q.dim();
  if (L < 2) fail(ErrorCode::dimension_too_small, "isotropic vector needs dim Z >= 2");
  if (!q.regular()) fail(ErrorCode::not_regular, "isotropic_in_space needs a regular space");
  auto sb = s.small_basis(q.space());
  const Vector& z1 = sb->vectors[0];
  const Vector& z2 = sb->vectors[1];
  Matrix g(2, 2, q.context());
  g(0, 0) = bilinear(q.gram(), z1, z1);
  g(0, 1) = g(1, 0) = bilinear(q.gram(), z1, z2);
  g(1, 1) = bilinear(q.gram(), z2, z2);
  Vector a = small_zero_free(g, s);
  Vector y = combine(a[0], z1, a[1], z2);
  BoundParams p;
  p.set("L", static_cast<long>(L)).set("HF", s.gram_height(q.gram())).set("HZ", s.height(q.space()));
  s.emit("zero_eq", lp(s.height(y)), p, "isotropic_in_space");
  return y;
}

// ---------------------------------------------------------------- maximal isotropic

namespace {

Subspace maxiso_any(const QuadraticSpace& q, Session& s, int level, MaxIsotropic& out);

Subspace maxiso_even(const QuadraticSpace& q, Session& s, int level, MaxIsotropic& out) {
  const std::size_t n = q.ambient(), L = q.dim(), k = L / 2;
  const Matrix& f = q.gram();
  HeightValue hf = s.gram_height(f), hz = s.height(q.space());
  BoundParams p;
  p.set("k", static_cast<long>(k)).set("HF", hf).set("HZ", hz);
  Subspace v;
  if (k == 1) {
    Vector y = isotropic_in_space(q, s);
    v = span_of(n, {y}, q.context());
    s.emit("q6", lp(s.height(y)), p, "max_isotropic", level);
  } else {
    auto sb = s.small_basis(q.space());
    std::vector<Vector> head(sb->vectors.begin(), sb->vectors.begin() + static_cast<std::ptrdiff_t>(L - 2));
    Subspace z1 = span_of(n, head, q.context());
    s.emit("ind_sub", lp(s.height(z1)), p, "max_isotropic", level);
    QuadraticSpace q1 = q.with_space(z1);
    Subspace u;
    if (q1.regular()) {
      u = maxiso_even(q1, s, level + 1, out);
    } else {
      s.notes.push_back("max_isotropic: singular Z1 at level " + std::to_string(level) + ", using radical split");
      RadicalSplit rs = radical_split(q1, s);
      std::vector<Vector> basis = rs.radical.basis();
      if (rs.regular_part.dim() > 0) {
        Subspace ur = maxiso_any(q1.with_space(rs.regular_part), s, level + 1, out);
        basis.insert(basis.end(), ur.basis().begin(), ur.basis().end());
      }
      basis.resize(std::min(basis.size(), k - 1));
      u = span_of(n, basis, q.context());
    }
    if (u.dim() != k - 1) fail(ErrorCode::contradicts_regularity, "isotropic subspace of Z1 has the wrong dimension");

    Subspace w = constrained_kernel(q.space(), image_columns(f, u.basis()));
    if (w.dim() != k + 1) fail(ErrorCode::contradicts_regularity, "orthogonal of U in Z has the wrong dimension");
    HeightValue hu = s.height(u), hw = s.height(w);
    BoundParams pw = p;
    pw.set("HU", hu);
    s.emit("H_W", lp(hw), pw, "max_isotropic", level);

    auto sbw = s.small_basis(w);
    std::vector<Vector> base = u.basis();
    std::vector<Vector> picked;
    for (const auto& c : sbw->vectors) {
      if (picked.size() == 2) break;
      if (!independent_of(base, c, n)) continue;
      base.push_back(c);
      picked.push_back(c);
    }
    const Vector& w1 = picked.at(0);
    const Vector& w2 = picked.at(1);
    TowerElement a = bilinear(f, w1, w1), b = bilinear(f, w1, w2), c = bilinear(f, w2, w2);
    if (a.is_zero() && b.is_zero() && c.is_zero())
      fail(ErrorCode::contradicts_regularity, "binary form vanishes on W");
    TowerContext ctx = context_of(w1);
    TowerElement one(ctx, Rational(1));
    Vector y1, y2;
    if (c.is_zero()) {
      y2 = w2;
      y1 = b.is_zero() ? w2 : combine(one, w1, -(a / (b * Rational(2))), w2);
    } else if (a.is_zero()) {
      y1 = w1;
      y2 = combine(one, w1, -(b * Rational(2)) / c, w2);
    } else {
      TowerContext ext = ctx;
      TowerElement r = adjoin_sqrt(b * b - a * c, &ext);
      y1 = combine(one, w1, (r - b) / c, w2);
      y2 = combine(one, w1, (-r - b) / c, w2);
    }
    std::vector<Vector> b1 = u.basis(), b2 = u.basis();
    b1.push_back(y1);
    b2.push_back(y2);
    IsotropicLevel rec;
    rec.level = level;
    rec.k = k;
    rec.u = u;
    rec.w = w;
    rec.w1 = w1;
    rec.w2 = w2;
    rec.v1 = span_of(n, b1, q.context());
    rec.v2 = span_of(n, b2, q.context());
    rec.h1 = s.height(rec.v1);
    rec.h2 = s.height(rec.v2);
    rec.chosen = compare_heights(rec.h2, rec.h1) < 0 ? 2 : 1;
    v = rec.chosen == 1 ? rec.v1 : rec.v2;

    BoundParams pb;
    pb.set("HW", hw).set("HF", hf);
    s.emit("bezout", lp(rec.h1) * lp(rec.h2), pb, "max_isotropic", level);
    s.emit("hint3", lp(rec.chosen == 1 ? rec.h1 : rec.h2), pb, "max_isotropic", level);
    out.levels.push_back(std::move(rec));
  }
  s.emit("vaaler_even", lp(s.height(v)), p, "max_isotropic", level);
  return v;
}

Subspace maxiso_odd(const QuadraticSpace& q, Session& s, int level, MaxIsotropic& out) {
  const std::size_t n = q.ambient(), L = q.dim(), k = L / 2;
  HeightValue hf = s.gram_height(q.gram()), hz = s.height(q.space());
  BoundParams p;
  p.set("k", static_cast<long>(k)).set("HF", hf).set("HZ", hz);
  auto sb = s.small_basis(q.space());
  std::vector<Vector> head(sb->vectors.begin(), sb->vectors.begin() + static_cast<std::ptrdiff_t>(L - 1));
  Subspace z1 = span_of(n, head, q.context());
  s.emit("Z1", lp(s.height(z1)), p, "max_isotropic", level);
  QuadraticSpace q1 = q.with_space(z1);
  Subspace v;
  if (q1.regular()) {
    v = maxiso_even(q1, s, level + 1, out);
    s.emit("o1", lp(s.height(v)), p, "max_isotropic", level);
  } else {
    RadicalSplit rs = radical_split(q1, s);
    s.emit("W", lp(s.height(rs.regular_part)), p, "max_isotropic", level);
    Subspace u = maxiso_any(q1.with_space(rs.regular_part), s, level + 1, out);
    std::vector<Vector> basis = rs.radical.basis();
    basis.insert(basis.end(), u.basis().begin(), u.basis().end());
    v = span_of(n, basis, q.context());
    BoundParams po = p;
    po.set("HU", s.height(u));
    s.emit("odd1", lp(s.height(v)), po, "max_isotropic", level);
  }
  s.emit("vaaler_odd", lp(s.height(v)), p, "max_isotropic", level);
  return v;
}

Subspace maxiso_any(const QuadraticSpace& q, Session& s, int level, MaxIsotropic& out) {
  if (q.dim() <= 1) return Subspace::zero(q.ambient(), q.context());
  return q.dim() % 2 == 0 ? maxiso_even(q, s, level, out) : maxiso_odd(q, s, level, out);
}

}  // namespace

MaxIsotropic max_isotropic(const QuadraticSpace& q, Session& s) {
  if (!q.regular()) fail(ErrorCode::not_regular, "max_isotropic needs a regular space");
  MaxIsotropic out;
  out.v = maxiso_any(q, s, 0, out);
  return out;
}

// ---------------------------------------------------------------- hyperbolic planes

HyperbolicPlane hyperbolic_pair(const QuadraticSpace& q, const Vector& x, Session& s) {
  if (!contains(q.space(), x)) fail(ErrorCode::ambient_mismatch, "vector is not in Z");
  if (!evaluate(q, x).is_zero()) fail(ErrorCode::anisotropic_input, "hyperbolic pair needs an isotropic vector");
  auto sb = s.small_basis(q.space());
  const Vector* yp = nullptr;
  TowerElement c;
  for (const auto& z : sb->vectors) {
    c = evaluate(q, x, z);
    if (!c.is_zero()) {
      yp = &z;
      break;
    }
  }
  if (!yp) fail(ErrorCode::radical_vector, "vector is orthogonal to all of Z");
  TowerElement fy = evaluate(q, *yp);
  TowerElement inv = invert(c);
  Vector y = sub(scale(inv, *yp), scale(fy * inv * inv * Rational(1, 2), x));
  HyperbolicPlane h{x, y, span_of(q.ambient(), {x, y}, q.context())};
  BoundParams p;
  p.set("k", static_cast<long>(std::max<std::size_t>(1, q.dim() / 2)))
      .set("HF", s.gram_height(q.gram()))
      .set("HZ", s.height(q.space()));
  s.emit("hyp1", lp(s.height(h.span)), p, "hyperbolic_pair");
  return h;
}

// ---------------------------------------------------------------- pools

PoolPick search_pool(const QuadraticSpace& q, const std::function<bool(const Vector&)>& accept, bool differences,
                     Session& s) {
  auto sb = s.small_basis(q.space());
  const auto& z = sb->vectors;
  for (const auto& v : z)
    if (accept(v)) return {v, true};
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      Vector plus = add(z[i], z[j]);
      if (accept(plus)) return {plus, true};
      if (differences) {
        Vector minus = sub(z[i], z[j]);
        if (accept(minus)) return {minus, true};
      }
    }
  TowerContext ctx = context_of(z);
  for (long bound = 2; bound <= 64; bound *= 2)
    for (int attempt = 0; attempt < 64; ++attempt) {
      Vector y(q.ambient(), TowerElement(ctx, Rational(0)));
      bool any = false;
      for (const auto& v : z) {
        long c = static_cast<long>(s.rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
        if (c == 0) continue;
        any = true;
        y = add(y, scale(TowerElement(ctx, Rational(c)), v));
      }
      if (any && accept(y)) return {y, false};
    }
  fail(ErrorCode::no_anisotropic_vector, "search pool exhausted");
}

// ---------------------------------------------------------------- Witt decomposition

WittDecomposition witt_decompose(const QuadraticSpace& q, Session& s) {
  const std::size_t n = q.ambient();
  WittDecomposition out;
  QuadraticSpace reg = q;
  std::vector<std::string> cav;
  if (q.regular()) {
    out.radical = Subspace::zero(n, q.context());
  } else {
    RadicalSplit rs = radical_split(q, s);
    out.radical = rs.radical;
    reg = q.with_space(rs.regular_part);
    cav.push_back("regular-part");
  }
  const std::size_t L = reg.dim(), k = L / 2;
  if (L == 0) return out;
  const Matrix& f = q.gram();
  HeightValue hf = s.gram_height(f), hz = s.height(reg.space());

  QuadraticSpace even = reg;
  if (L % 2 == 1) {
    PoolPick pick = search_pool(reg, [&](const Vector& v) { return !evaluate(reg, v).is_zero(); }, false, s);
    const Vector& y = pick.y;
    out.anisotropic_line = y;
    BoundParams p;
    p.set("k", static_cast<long>(k)).set("HZ", hz);
    std::vector<std::string> c = cav;
    if (!pick.deterministic) c.push_back("randomized-witness");
    HeightValue hy = s.height(y);
    s.emit("witt2", lp(hy), p, "witt_decompose", 0, c);
    s.emit("anis_comp", lp(hy), p, "witt_decompose", 0, c);
    Subspace z1 = constrained_kernel(reg.space(), image_columns(f, {y}));
    even = reg.with_space(z1);
    if (!even.regular()) fail(ErrorCode::contradicts_regularity, "orthogonal of the anisotropic line is singular");
    BoundParams pz;
    pz.set("HW", hy).set("HZ", hz).set("HF", hf);
    s.emit("zz2", lp(s.height(z1)), pz, "witt_decompose", 0, cav);
  }

  const std::size_t keven = even.dim() / 2;
  HeightValue hz_even = s.height(even.space());
  QuadraticSpace cur = even;
  int level = 0;
  while (cur.dim() > 0) {
    Vector x = isotropic_in_space(cur, s);
    HyperbolicPlane h = hyperbolic_pair(cur, x, s);
    Subspace z1 = constrained_kernel(cur.space(), image_columns(f, {h.x, h.y}));
    BoundParams pz;
    pz.set("H1", s.height(h.span)).set("HZ", s.height(cur.space())).set("HF", hf);
    s.emit("zz1", lp(s.height(z1)), pz, "witt_decompose", level, cav);
    out.planes.push_back(std::move(h));
    cur = cur.with_space(z1);
    if (!cur.regular()) fail(ErrorCode::contradicts_regularity, "orthogonal of a hyperbolic plane is singular");
    ++level;
  }
  level = 0;
  for (const auto& h : out.planes) {
    HeightValue hh = s.height(h.span);
    BoundParams pe;
    pe.set("k", static_cast<long>(keven)).set("HF", hf).set("HZ", hz_even);
    s.emit("even_dec", lp(hh), pe, "witt_decompose", level, cav);
    BoundParams pw;
    pw.set("k", static_cast<long>(k)).set("HF", hf).set("HZ", hz);
    s.emit("witt1", lp(hh), pw, "witt_decompose", level, cav);
    ++level;
  }
  return out;
}

// ---------------------------------------------------------------- orthogonal bases

namespace {

std::vector<Vector> ortho_rec(const QuadraticSpace& q, Session& s, int level) {
  const std::size_t n = q.ambient(), L = q.dim();
  if (L == 0) return {};
  auto sb = s.small_basis(q.space());
  if (L == 1) return {sb->vectors[0]};
  bool vanishes = true;
  for (const auto& e : q.restricted_gram().entries())
    if (!e.is_zero()) {
      vanishes = false;
      break;
    }
  if (vanishes) return sb->vectors;

  Vector x1;
  Subspace z1;
  if (s.options.literal_orthobasis) {
    x1 = sb->vectors[0];
    if (contains(q.radical(), x1)) {
      std::size_t j = 0;
      while (x1[j].is_zero()) ++j;
      z1 = intersect(q.space(), kernel(Matrix::from_rows({unit_vector(n, j, q.context())})));
    } else {
      z1 = constrained_kernel(q.space(), image_columns(q.gram(), {x1}));
      if (contains(z1, x1))
        fail(ErrorCode::proof_gap, "isotropic non-radical vector: the recursion does not split off x1");
    }
  } else {
    struct Cand {
      Vector x;
      HeightValue h;
    };
    std::vector<Cand> pool;
    const auto& z = sb->vectors;
    auto consider = [&](const Vector& v) {
      if (!evaluate(q, v).is_zero()) pool.push_back({v, s.height(v)});
    };
    for (const auto& v : z) consider(v);
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = i + 1; j < z.size(); ++j) consider(add(z[i], z[j]));
    if (pool.empty()) fail(ErrorCode::no_anisotropic_vector, "no anisotropic vector among basis vectors and sums");
    auto best = std::min_element(pool.begin(), pool.end(),
                                 [](const Cand& a, const Cand& b) { return height_less(a.h, a.x, b.h, b.x); });
    x1 = best->x;
    z1 = constrained_kernel(q.space(), image_columns(q.gram(), {x1}));
  }
  std::vector<Vector> out{x1};
  auto rest = ortho_rec(q.with_space(z1), s, level + 1);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

std::vector<Vector> orthogonal_basis(const QuadraticSpace& q, Session& s) {
  const std::size_t L = q.dim();
  if (L < 1) fail(ErrorCode::dimension_too_small, "orthogonal basis of the zero subspace");
  std::vector<Vector> xs = ortho_rec(q, s, 0);
  LogProduct lhs;
  for (const auto& x : xs) lhs *= lp(s.height(x));
  BoundParams p;
  p.set("L", static_cast<long>(L)).set("HF", s.gram_height(q.gram())).set("HZ", s.height(q.space()));
  s.emit("siegel2", lhs, p, "orthogonal_basis");
  return xs;
}

// ---------------------------------------------------------------- exact checks

bool totally_isotropic(const QuadraticSpace& q, const Subspace& v) {
  if (!contains(q.space(), v)) return false;
  const auto& b = v.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j)
      if (!evaluate(q, b[i], b[j]).is_zero()) return false;
  return true;
}

bool pairwise_orthogonal(const QuadraticSpace& q, const std::vector<Vector>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (!evaluate(q, xs[i], xs[j]).is_zero()) return false;
  return true;
}

bool check_witt(const QuadraticSpace& q, const WittDecomposition& w) {
  std::vector<Vector> all;
  std::vector<std::vector<Vector>> blocks;
  blocks.push_back(w.radical.basis());
  for (const auto& h : w.planes) {
    if (!evaluate(q, h.x).is_zero() || !evaluate(q, h.y).is_zero()) return false;
    if (!(evaluate(q, h.x, h.y) - TowerElement(q.context(), Rational(1))).is_zero()) return false;
    blocks.push_back({h.x, h.y});
  }
  if (w.anisotropic_line) {
    if (evaluate(q, *w.anisotropic_line).is_zero()) return false;
    blocks.push_back({*w.anisotropic_line});
  }
  for (const auto& r : w.radical.basis())
    if (!contains(q.radical(), r)) return false;
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t b = a + 1; b < blocks.size(); ++b)
      for (const auto& x : blocks[a])
        for (const auto& y : blocks[b])
          if (!evaluate(q, x, y).is_zero()) return false;
  for (const auto& bl : blocks) all.insert(all.end(), bl.begin(), bl.end());
  if (all.size() != q.dim()) return false;
  Subspace sp(q.ambient(), all, q.context());
  return sp.dim() == q.dim() && sp == q.space();
}

}  // namespace qbar
