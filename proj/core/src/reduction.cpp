#include "qbar/reduction.hpp"

#include "qbar/embedding.hpp"
#include "qbar/lll.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qbar {

namespace {

unsigned support_of(const std::vector<Vector>& rows) {
  unsigned s = 0;
  for (const auto& r : rows)
    for (const auto& e : r) s = std::max(s, e.support_level());
  return s;
}

Vector truncate(const Vector& x, const TowerContext& p) {
  Vector out;
  out.reserve(x.size());
  for (const auto& e : x) {
    const std::size_t k = std::min(p.degree(), e.coeffs().size());
    std::vector<Rational> c(e.coeffs().begin(), e.coeffs().begin() + static_cast<std::ptrdiff_t>(k));
    out.emplace_back(p, std::move(c));
  }
  return out;
}

std::vector<Vector> as_vectors(const lll::IntMatrix& rows, const TowerContext& p, std::size_t n) {
  const std::size_t d = p.degree();
  std::vector<Vector> vecs;
  for (const auto& r : rows) {
    Vector v;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> c(d);
      for (std::size_t k = 0; k < d; ++k) c[k] = Rational(r[i * d + k]);
      v.emplace_back(p, std::move(c));
    }
    vecs.push_back(std::move(v));
  }
  return vecs;
}

// exact integer Gram matrix of sum_sigma sigma(x) sigma(y), totally real towers only
lll::IntMatrix trace_gram(const std::vector<Vector>& vecs) {
  const std::size_t m = vecs.size();
  std::vector<std::vector<Rational>> q(m, std::vector<Rational>(m));
  Integer den = 1;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      Rational s = 0;
      for (std::size_t i = 0; i < vecs[a].size(); ++i) s += trace(vecs[a][i] * vecs[b][i]);
      q[a][b] = q[b][a] = s;
      den = lcm(den, s.get_den());
    }
  lll::IntMatrix g(m, std::vector<Integer>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) g[a][b] = Rational(q[a][b] * Rational(den)).get_num();
  return g;
}

// embedding values of every coordinate, as doubles
using Embedded = std::vector<std::vector<std::vector<std::pair<double, double>>>>;  // [row][embedding][coord]
Embedded embed_rows(const std::vector<Vector>& vecs, const TowerContext& p) {
  auto emb = p.embeddings(128);
  Embedded out(vecs.size(), std::vector<std::vector<std::pair<double, double>>>(emb->count()));
  for (std::size_t a = 0; a < vecs.size(); ++a)
    for (std::size_t e = 0; e < emb->count(); ++e)
      for (const auto& x : vecs[a]) {
        ComplexInterval z = emb->evaluate(e, x);
        out[a][e].emplace_back(z.re.mid_double(), z.im.mid_double());
      }
  return out;
}

// rounded Gram matrix of sum_sigma w_sigma <sigma(x), sigma(y)>, +1 on the diagonal
lll::IntMatrix weighted_gram(const Embedded& val, const std::vector<double>& w) {
  const std::size_t m = val.size();
  std::vector<std::vector<double>> q(m, std::vector<double>(m, 0.0));
  double top = 0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      double s = 0;
      for (std::size_t e = 0; e < w.size(); ++e)
        for (std::size_t t = 0; t < val[a][e].size(); ++t)
          s += w[e] * (val[a][e][t].first * val[b][e][t].first + val[a][e][t].second * val[b][e][t].second);
      q[a][b] = q[b][a] = s;
      top = std::max(top, std::fabs(s));
    }
  const double scale = std::ldexp(1.0, 40) / std::max(top, 1.0);
  lll::IntMatrix g(m, std::vector<Integer>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) g[a][b] = Integer(static_cast<long>(std::llround(q[a][b] * scale)));
  for (std::size_t a = 0; a < m; ++a) g[a][a] += 1;
  return g;
}

// Embedding weights tried on top of the plain trace form. The height only sees
// the product of the local sizes, so unbalanced vectors can be small while
// long in the trace norm.
std::vector<std::vector<double>> weightings(std::size_t count, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  out.emplace_back(count, 1.0);
  if (count <= 4) {
    for (int j : {2, 4, 8, 16, 32})
      for (std::size_t e = 0; e < (count == 2 ? 1 : count); ++e)
        for (int sign : {1, -1}) {
          std::vector<double> w(count, 1.0);
          w[e] = std::ldexp(1.0, sign * j);
          out.push_back(std::move(w));
        }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-16, 16);
    for (int k = 0; k < 8; ++k) {
      std::vector<double> w(count);
      for (auto& x : w) x = std::ldexp(1.0, static_cast<int>(u(rng)));
      out.push_back(std::move(w));
    }
  }
  return out;
}

void normalize_sign(Vector& x) {
  for (const auto& e : x) {
    if (e.formally_zero()) continue;
    for (const auto& c : e.coeffs()) {
      if (sgn(c) == 0) continue;
      if (sgn(c) < 0)
        for (auto& y : x) y = -y;
      return;
    }
  }
}

std::string options_key(const ReductionOptions& o) {
  return "small_basis:" + std::to_string(o.heights.trials) + ":" + std::to_string(o.heights.seed) + ":" +
         std::to_string(o.heights.bits) + ":" + std::to_string(o.checks.bits_start) + ":" +
         std::to_string(o.checks.bits_max) + ":" + to_string(o.delta) + (o.trace ? ":t" : "");
}

SmallBasis compute(const Subspace& z, const ReductionOptions& opt) {
  const std::size_t n = z.ambient(), L = z.dim();
  TowerContext p = z.context().prefix(support_of(z.basis()));
  const std::size_t d = p.degree();

  // restriction of scalars: Q-coordinates of the monomial multiples of the basis
  lll::IntMatrix rows;
  {
    std::vector<std::vector<Rational>> q;
    Integer den = 1;
    for (const auto& b : z.basis()) {
      Vector bt = truncate(b, p);
      for (std::size_t mono = 0; mono < d; ++mono) {
        std::vector<Rational> mc(d);
        mc[mono] = 1;
        TowerElement m(p, std::move(mc));
        std::vector<Rational> coords(n * d);
        for (std::size_t i = 0; i < n; ++i) {
          TowerElement y = m * bt[i];
          for (std::size_t k = 0; k < d; ++k) {
            coords[i * d + k] = y.coeffs()[k];
            den = lcm(den, y.coeffs()[k].get_den());
          }
        }
        q.push_back(std::move(coords));
      }
    }
    for (const auto& r : q) {
      std::vector<Integer> ir;
      for (const auto& c : r) ir.push_back(Rational(c * Rational(den)).get_num());
      rows.push_back(std::move(ir));
    }
  }
  lll::IntMatrix lattice = lll::saturate(rows);
  bool exact = true;
  std::vector<lll::IntMatrix> bases;
  if (d == 1) {
    bases.push_back(lll::multiply(lll::reduce_gram(trace_gram(as_vectors(lattice, p, n)), opt.delta), lattice));
  } else {
    // exact reduction in coordinates first: saturation leaves huge entries
    lattice = lll::reduce_rows(lattice, opt.delta);
    bases.push_back(lattice);
    std::vector<Vector> vecs = as_vectors(lattice, p, n);
    if (p.totally_real())
      bases.push_back(lll::multiply(lll::reduce_gram(trace_gram(vecs), opt.delta), lattice));
    else
      exact = false;
    Embedded val = embed_rows(vecs, p);
    for (const auto& w : weightings(val.empty() ? 0 : val[0].size(), opt.heights.seed)) {
      try {
        bases.push_back(lll::multiply(lll::reduce_gram(weighted_gram(val, w), opt.delta), lattice));
      } catch (const Error&) {
        // rounding lost definiteness for this weighting
      }
    }
  }

  struct Cand {
    Vector x;
    HeightValue h;
  };
  std::vector<Cand> pool;
  for (const auto& basis : bases)
    for (auto& v : as_vectors(basis, p, n)) {
      if (is_zero_vector(v)) continue;
      normalize_sign(v);
      bool seen = false;
      for (const auto& c : pool)
        if (identical(c.x, v)) {
          seen = true;
          break;
        }
      if (seen) continue;
      HeightValue h = height_vector(v, opt.heights);
      pool.push_back({std::move(v), std::move(h)});
    }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Cand& a, const Cand& b) { return height_less(a.h, a.x, b.h, b.x); });

  SmallBasis sb;
  sb.exact_gram = exact;
  std::vector<Vector> chosen;
  for (auto& c : pool) {
    if (chosen.size() == L) break;
    std::vector<Vector> trial = chosen;
    trial.push_back(c.x);
    if (rref(trial, n).rows.size() != trial.size()) continue;
    chosen.push_back(c.x);
    sb.vectors.push_back(lift(c.x, z.context()));
    sb.heights.push_back(c.h);
    sb.inhom.push_back(height_inhom(c.x, opt.heights));
  }
  if (sb.vectors.size() != L) fail(ErrorCode::rank_deficient, "reduced lattice does not span the subspace");

  sb.subspace_height = height_subspace(z, opt.heights);
  BoundParams params;
  params.set("L", static_cast<long>(L)).set("HZ", sb.subspace_height);
  LogProduct lhs;
  for (const auto& h : sb.heights) lhs *= LogProduct::of(h);
  sb.certificate = check("siegel3", lhs, params, opt.checks);
  sb.certificate.site = "small_basis";
  if (!exact) sb.certificate.caveats.push_back("rounded-gram");
  if (opt.trace) {
    LogProduct lh;
    for (const auto& h : sb.inhom) lh *= LogProduct::of(h);
    BoundCertificate c = check("siegel3_h", lh, params, opt.checks);
    c.site = "small_basis";
    sb.inhom_chain = std::move(c);
  }
  return sb;
}

}  // namespace

Interval SmallBasis::log_product(unsigned bits) const {
  LogProduct p;
  for (const auto& h : heights) p *= LogProduct::of(h);
  return p.log_enclosure(bits);
}

bool canonical_less(const Vector& a, const Vector& b) {
  auto first = [](const Vector& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].formally_zero()) return i;
    return v.size();
  };
  std::size_t fa = first(a), fb = first(b);
  if (fa != fb) return fa < fb;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const auto& ca = a[i].coeffs();
    const auto& cb = b[i].coeffs();
    for (std::size_t k = 0; k < std::max(ca.size(), cb.size()); ++k) {
      Rational x = k < ca.size() ? ca[k] : Rational(0);
      Rational y = k < cb.size() ? cb[k] : Rational(0);
      // larger leading entries first: (1,0) before (0,1) within a coordinate block
      if (x != y) return abs(x) != abs(y) ? abs(x) > abs(y) : x > y;
    }
  }
  return false;
}

bool height_less(const HeightValue& ha, const Vector& a, const HeightValue& hb, const Vector& b) {
  int c = compare_heights(ha, hb);
  if (c != 0) return c < 0;
  return canonical_less(a, b);
}

std::shared_ptr<const SmallBasis> small_basis(const Subspace& z, const ReductionOptions& opt) {
  if (z.dim() == 0) fail(ErrorCode::zero_object, "small basis of the zero subspace");
  return z.memo<SmallBasis>(options_key(opt), [&] { return compute(z, opt); });
}

}  // namespace qbar
