#include "qbar/suite.hpp"

#include "qbar/random.hpp"

namespace qbar {

namespace suite {

namespace {

BoundCertificate run(const std::string& id, const LogProduct& lhs, const BoundParams& p, const EngineOptions& opt) {
  BoundCertificate c = check(id, lhs, p, opt.checks);
  c.site = "suite";
  return c;
}

HeightValue wedge_height(const std::vector<Vector>& cols, const EngineOptions& opt) {
  return height_vector(grassmann(cols), opt.heights);
}

std::vector<HeightValue> heights_of(const std::vector<Vector>& xs, const EngineOptions& opt) {
  std::vector<HeightValue> out;
  for (const auto& x : xs) out.push_back(height_vector(x, opt.heights));
  return out;
}

bool nonzero(const Matrix& m) {
  for (const auto& e : m.entries())
    if (!e.is_zero()) return true;
  return false;
}

}  // namespace

std::vector<BoundCertificate> wedge(Rng& rng, std::size_t n, const TowerContext& ctx, const EngineOptions& opt) {
  std::vector<BoundCertificate> out;
  const std::size_t j = random::integer(rng, n >= 2 ? 2 : 1, n);
  std::vector<Vector> cols = random::independent(rng, n, j, 3, ctx);
  // scale by random field elements so the columns are not all integral
  for (auto& c : cols) {
    TowerElement s = random::element(rng, ctx, 5);
    if (!s.is_zero()) c = scale(s, c);
  }
  HeightValue hx = wedge_height(cols, opt);
  BoundParams p;
  p.set("Hx", heights_of(cols, opt));
  out.push_back(run("wedge_prod", LogProduct::of(hx), p, opt));
  if (j >= 2) {
    const std::size_t cut = random::integer(rng, 1, j - 1);
    std::vector<Vector> x1(cols.begin(), cols.begin() + cut), x2(cols.begin() + cut, cols.end());
    BoundParams pb;
    pb.set("HX1", wedge_height(x1, opt)).set("HX2", wedge_height(x2, opt));
    out.push_back(run("wedge_block", LogProduct::of(hx), pb, opt));
  }
  return out;
}

std::vector<BoundCertificate> mult(Rng& rng, const Matrix& f, const EngineOptions& opt) {
  const std::size_t n = f.rows();
  const TowerContext ctx = f.context();
  const std::size_t r = rank(f);
  if (r == 0) return {};
  const std::size_t j = random::integer(rng, 1, r);
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<Vector> xs = random::independent(rng, n, j, 3, ctx), fx;
    for (const auto& x : xs) fx.push_back(f * x);
    if (rref(fx, n).rows.size() != j) continue;
    BoundParams p;
    p.set("J", static_cast<long>(j)).set("HF", height_gram(f, opt.heights)).set("Hx", heights_of(xs, opt));
    return {run("mult_bound", LogProduct::of(wedge_height(fx, opt)), p, opt)};
  }
  return {};
}

std::vector<BoundCertificate> intersection(Rng& rng, std::size_t n, const TowerContext& ctx, const EngineOptions& opt) {
  if (n < 2) return {};
  // dimensions adding up past n so the intersection is nonzero
  const std::size_t d1 = random::integer(rng, 1, n - 1);
  const std::size_t d2 = random::integer(rng, n - d1 + 1, n);
  Subspace u1 = random::subspace(rng, n, d1, 3, ctx), u2 = random::subspace(rng, n, d2, 3, ctx);
  Subspace w = intersect(u1, u2);
  if (w.dim() == 0) return {};
  BoundParams p;
  p.set("HU1", height_subspace(u1, opt.heights)).set("HU2", height_subspace(u2, opt.heights));
  return {run("intersection", LogProduct::of(height_subspace(w, opt.heights)), p, opt)};
}

std::vector<BoundCertificate> matrix_pm(const Matrix& a, const EngineOptions& opt) {
  std::vector<BoundCertificate> out;
  BoundParams p;
  p.set("HA", height_gram(a, opt.heights));
  Matrix id = Matrix::identity(a.rows(), a.context());
  for (const Matrix& m : {a + id, a - id})
    if (nonzero(m)) out.push_back(run("matrix_pm", LogProduct::of(height_gram(m, opt.heights)), p, opt));
  return out;
}

std::vector<BoundCertificate> matrix_prod(const Matrix& a, const Matrix& b, const EngineOptions& opt) {
  Matrix ab = a * b;
  if (!nonzero(a) || !nonzero(b) || !nonzero(ab)) return {};
  BoundParams p;
  p.set("HA", height_gram(a, opt.heights)).set("HB", height_gram(b, opt.heights));
  return {run("matrix_prod", LogProduct::of(height_gram(ab, opt.heights)), p, opt)};
}

std::vector<BoundCertificate> sum_height(const Vector& a, const std::vector<Vector>& xs, const EngineOptions& opt) {
  if (xs.empty() || is_zero_vector(a)) return {};
  Vector s(xs[0].size(), TowerElement(context_of(a), Rational(0)));
  for (std::size_t i = 0; i < xs.size(); ++i) s = add(s, scale(a[i], xs[i]));
  if (is_zero_vector(s)) return {};
  std::vector<HeightValue> hx;
  for (const auto& x : xs) hx.push_back(height_inhom(x, opt.heights));
  BoundParams p;
  p.set("Ha", height_vector(a, opt.heights)).set("hx", hx);
  return {run("sum_height", LogProduct::of(height_vector(s, opt.heights)), p, opt)};
}

std::vector<BoundCertificate> hf_vs_curly(const Matrix& f, const EngineOptions& opt) {
  if (!nonzero(f)) return {};
  BoundParams p;
  p.set("HF", height_gram(f, opt.heights));
  return {run("hf_vs_curly", LogProduct::of(height_form_poly(f, opt.heights)), p, opt)};
}

}  // namespace suite

std::vector<BoundCertificate> inequality_suite(const SuiteInstance& inst, const EngineOptions& opt) {
  std::size_t n = inst.n;
  if (n == 0 && inst.form) n = inst.form->rows();
  if (n == 0) return {};
  if (inst.form && inst.form->rows() != n) fail(ErrorCode::ambient_mismatch, "suite form has the wrong size");
  suite::Rng rng(inst.seed);
  const TowerContext& ctx = inst.context;
  const long b = inst.bound;
  std::vector<BoundCertificate> out;
  auto append = [&](std::vector<BoundCertificate> cs) {
    for (auto& c : cs) out.push_back(std::move(c));
  };
  Matrix f = inst.form ? *inst.form : random::symmetric(rng, n, b, ctx);
  append(suite::wedge(rng, n, ctx, opt));
  append(suite::mult(rng, f, opt));
  append(suite::intersection(rng, n, ctx, opt));
  append(suite::matrix_pm(random::unimodular(rng, n, 3, ctx), opt));
  append(suite::matrix_prod(random::matrix(rng, n, n, b, ctx), random::matrix(rng, n, n, b, ctx), opt));
  {
    const std::size_t l = random::integer(rng, 1, n);
    Vector a = random::vector(rng, l, b, ctx);
    std::vector<Vector> xs;
    for (std::size_t i = 0; i < l; ++i) xs.push_back(random::vector(rng, n, b, ctx));
    append(suite::sum_height(a, xs, opt));
  }
  append(suite::hf_vs_curly(f, opt));
  return out;
}

}  // namespace qbar
