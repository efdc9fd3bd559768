#include "qbar/embedding.hpp"

namespace qbar {

EmbeddingSet::EmbeddingSet(unsigned bits, std::vector<std::vector<ComplexInterval>> generator_values)
    : bits_(bits), gens_(std::move(generator_values)) {
  const std::size_t n = gens_.size();
  monomials_.resize(n);
  real_.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    const auto& g = gens_[e];
    auto& mono = monomials_[e];
    mono.reserve(std::size_t(1) << g.size());
    mono.emplace_back(Interval(Rational(1), bits), Interval(bits));
    for (unsigned i = 0; i < g.size(); ++i) {
      const std::size_t h = mono.size();
      for (std::size_t m = 0; m < h; ++m) mono.push_back(mono[m] * g[i]);
    }
    bool r = true;
    for (const auto& v : g) r = r && v.is_real();
    real_[e] = r;
  }
}

bool EmbeddingSet::all_real() const {
  for (bool r : real_)
    if (!r) return false;
  return true;
}

ComplexInterval EmbeddingSet::evaluate(std::size_t e, const TowerElement& x) const {
  const auto& mono = monomials_[e];
  const auto& c = x.coeffs();
  if (c.size() > mono.size()) fail(ErrorCode::context_mismatch, "element outside embedded tower");
  ComplexInterval acc(bits_);
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (sgn(c[m]) == 0) continue;
    acc = acc + Interval(c[m], bits_) * mono[m];
  }
  return acc;
}

namespace {

bool try_embed(const TowerContext& ctx, unsigned bits, std::vector<std::vector<ComplexInterval>>& out) {
  std::vector<std::vector<ComplexInterval>> cur(1);
  for (unsigned i = 0; i < ctx.generator_count(); ++i) {
    // evaluate the radicand under each partial embedding
    EmbeddingSet partial(bits, cur);
    TowerElement d(ctx.prefix(i), ctx.generator(i).square);
    std::vector<std::vector<ComplexInterval>> next(2 * cur.size());
    for (std::size_t e = 0; e < cur.size(); ++e) {
      ComplexInterval z = partial.evaluate(e, d);
      ComplexInterval r(bits);
      if (!csqrt(z, r) || contains_zero(r)) return false;
      next[e] = cur[e];
      next[e].push_back(r);
      next[e + cur.size()] = cur[e];
      next[e + cur.size()].push_back(-r);
    }
    cur = std::move(next);
  }
  out = std::move(cur);
  return true;
}

}  // namespace

EmbeddingSet embed_all(const TowerContext& ctx, unsigned bits, unsigned max_bits) {
  for (unsigned b = bits; b <= max_bits; b *= 2) {
    std::vector<std::vector<ComplexInterval>> vals;
    if (try_embed(ctx, b, vals)) return EmbeddingSet(b, std::move(vals));
  }
  fail(ErrorCode::precision_cap_exceeded, "embeddings not separated at " + std::to_string(max_bits) + " bits");
}

}  // namespace qbar
