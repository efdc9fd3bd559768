#include "qbar/tower.hpp"

#include "qbar/embedding.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace qbar {

namespace detail {

struct ContextData {
  std::shared_ptr<const ContextData> parent;
  std::vector<Generator> gens;
  std::vector<std::string> prefix_sigs;  // prefix_sigs[i]: signature of the first i generators
  unsigned degree_cap = TowerContext::default_degree_cap;
  unsigned certified = 0;

  mutable std::mutex cache_mutex;
  mutable std::map<unsigned, std::shared_ptr<const EmbeddingSet>> embedding_cache;
  mutable int totally_real = -1;

  static TowerContext wrap(std::shared_ptr<const ContextData> d) { return TowerContext(std::move(d)); }
};

}  // namespace detail

namespace {

using Coeffs = std::vector<Rational>;
using Gens = std::vector<Generator>;

std::string coeff_key(const Rational* a, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ',';
    s += a[i].get_str();
  }
  return s;
}

struct SquareRegistry {
  std::mutex mutex;
  std::map<std::string, Coeffs> roots;
};

SquareRegistry& registry() {
  static SquareRegistry r;
  return r;
}

std::string registry_key(const std::string& prefix_sig, const Rational* d, std::size_t n) {
  return prefix_sig + "#" + coeff_key(d, n);
}

bool all_zero(const Rational* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(a[i]) != 0) return false;
  return true;
}

void mul_rec(const Gens& g, unsigned level, const Rational* a, const Rational* b, Rational* out) {
  if (level == 0) {
    out[0] = a[0] * b[0];
    return;
  }
  const std::size_t h = std::size_t(1) << (level - 1);
  const bool a1z = all_zero(a + h, h), b1z = all_zero(b + h, h);
  if (a1z && b1z) {
    mul_rec(g, level - 1, a, b, out);
    for (std::size_t i = 0; i < h; ++i) out[h + i] = 0;
    return;
  }
  if (a1z) {
    mul_rec(g, level - 1, a, b, out);
    mul_rec(g, level - 1, a, b + h, out + h);
    return;
  }
  if (b1z) {
    mul_rec(g, level - 1, a, b, out);
    mul_rec(g, level - 1, a + h, b, out + h);
    return;
  }
  Coeffs t0(h), t1(h), sa(h), sb(h), t2(h), dt(h);
  mul_rec(g, level - 1, a, b, t0.data());
  mul_rec(g, level - 1, a + h, b + h, t1.data());
  for (std::size_t i = 0; i < h; ++i) {
    sa[i] = a[i] + a[h + i];
    sb[i] = b[i] + b[h + i];
  }
  mul_rec(g, level - 1, sa.data(), sb.data(), t2.data());
  mul_rec(g, level - 1, g[level - 1].square.data(), t1.data(), dt.data());
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = t0[i] + dt[i];
    out[h + i] = t2[i] - t0[i] - t1[i];
  }
}

Coeffs mul(const Gens& g, unsigned level, const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::size_t(1) << level);
  mul_rec(g, level, a.data(), b.data(), out.data());
  return out;
}

// a0^2 - D a1^2 for a at `level`, returned at level-1
Coeffs rel_norm(const Gens& g, unsigned level, const Rational* a) {
  const std::size_t h = std::size_t(1) << (level - 1);
  Coeffs a0(a, a + h), a1(a + h, a + 2 * h);
  Coeffs s0 = mul(g, level - 1, a0, a0);
  if (all_zero(a1.data(), h)) return s0;
  Coeffs s1 = mul(g, level - 1, a1, a1);
  Coeffs ds1 = mul(g, level - 1, g[level - 1].square, s1);
  for (std::size_t i = 0; i < h; ++i) s0[i] -= ds1[i];
  return s0;
}

Coeffs inv_rec(const detail::ContextData& ctx, unsigned level, const Coeffs& a);

[[noreturn]] void raise_square(const detail::ContextData& ctx, unsigned level, const Coeffs& a) {
  // a0^2 = D a1^2 with a nonzero: D = (a0 / a1)^2
  const auto& g = ctx.gens;
  const std::size_t h = std::size_t(1) << (level - 1);
  Coeffs a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
  Coeffs root = mul(g, level - 1, a0, inv_rec(ctx, level - 1, a1));
  const Coeffs& d = g[level - 1].square;
  {
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    reg.roots[registry_key(ctx.prefix_sigs[level - 1], d.data(), d.size())] = root;
  }
  throw SquareDetected(level - 1, d, root);
}

Coeffs inv_rec(const detail::ContextData& ctx, unsigned level, const Coeffs& a) {
  const auto& g = ctx.gens;
  if (level == 0) {
    if (sgn(a[0]) == 0) fail(ErrorCode::division_by_zero, "inverse of zero");
    return {1 / a[0]};
  }
  const std::size_t h = std::size_t(1) << (level - 1);
  if (all_zero(a.data() + h, h)) {
    Coeffs r = inv_rec(ctx, level - 1, Coeffs(a.begin(), a.begin() + h));
    r.resize(2 * h);
    return r;
  }
  Coeffs n = rel_norm(g, level, a.data());
  if (all_zero(n.data(), h)) raise_square(ctx, level, a);
  Coeffs ninv = inv_rec(ctx, level - 1, n);
  Coeffs a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
  Coeffs r0 = mul(g, level - 1, a0, ninv);
  Coeffs r1 = mul(g, level - 1, a1, ninv);
  Coeffs out(2 * h);
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = std::move(r0[i]);
    out[h + i] = -r1[i];
  }
  return out;
}

Rational norm_rec(const Gens& g, unsigned level, Coeffs a) {
  while (level > 0) {
    a = rel_norm(g, level, a.data());
    --level;
  }
  return a[0];
}

std::string signature_of(const Gens& gens) {
  std::string s;
  for (const auto& g : gens) s += "[" + coeff_key(g.square.data(), g.square.size()) + "]";
  return s;
}

bool rational_square(const Rational& q) { return sgn(q) > 0 && is_square(q.get_num()) && is_square(q.get_den()); }

Rational rational_sqrt(const Rational& q) {
  Rational r(sqrt(q.get_num()), sqrt(q.get_den()));
  r.canonicalize();
  return r;
}

std::shared_ptr<const detail::ContextData> base_data(unsigned cap) {
  auto d = std::make_shared<detail::ContextData>();
  d->degree_cap = cap;
  d->prefix_sigs.push_back("");
  return d;
}

}  // namespace

SquareDetected::SquareDetected(unsigned lvl, std::vector<Rational> d, std::vector<Rational> r)
    : level(lvl), radicand(std::move(d)), root(std::move(r)) {
  message = "SquareDetected: radicand of generator " + std::to_string(level + 1) + " is a square";
}

// ---------------------------------------------------------------- context

TowerContext TowerContext::rational(unsigned degree_cap) {
  if (degree_cap == default_degree_cap) {
    static const TowerContext shared(base_data(default_degree_cap));
    return shared;
  }
  return TowerContext(base_data(degree_cap));
}

unsigned TowerContext::generator_count() const { return static_cast<unsigned>(data_->gens.size()); }
const Generator& TowerContext::generator(unsigned i) const { return data_->gens.at(i); }
unsigned TowerContext::degree_cap() const { return data_->degree_cap; }
const std::string& TowerContext::signature() const { return data_->prefix_sigs.back(); }
unsigned TowerContext::certified_levels() const { return data_->certified; }

TowerContext TowerContext::prefix(unsigned level) const {
  if (level > generator_count()) fail(ErrorCode::context_mismatch, "prefix longer than context");
  auto d = data_;
  while (d->gens.size() > level) d = d->parent;
  return TowerContext(d);
}

bool TowerContext::extends(const TowerContext& other) const {
  const auto n = other.generator_count();
  if (n > generator_count()) return false;
  if (n == 0) return true;
  auto d = data_;
  while (d->gens.size() > n) d = d->parent;
  if (d == other.data_) return true;
  return d->prefix_sigs.back() == other.signature();
}

bool TowerContext::same(const TowerContext& other) const {
  return generator_count() == other.generator_count() && extends(other);
}

TowerContext TowerContext::with_generator(std::vector<Rational> square) const {
  const unsigned t = generator_count();
  const std::size_t half = std::size_t(1) << t;
  if (2 * half > degree_cap())
    fail(ErrorCode::degree_cap_exceeded, "degree " + std::to_string(2 * half) + " exceeds cap " +
                                             std::to_string(degree_cap()));
  square.resize(half);
  if (all_zero(square.data(), half)) fail(ErrorCode::zero_radicand, "generator square is zero");
  auto d = std::make_shared<detail::ContextData>();
  d->parent = data_;
  d->gens = data_->gens;
  d->degree_cap = data_->degree_cap;
  Generator g;
  g.name = "g" + std::to_string(t + 1);
  g.rational = all_zero(square.data() + 1, half - 1);
  g.square = std::move(square);
  d->gens.push_back(std::move(g));
  d->prefix_sigs = data_->prefix_sigs;
  d->prefix_sigs.push_back(signature_of(d->gens));
  d->certified = data_->certified;
  if (data_->certified == t && d->gens.back().rational) {
    // independent modulo squares from every product of the earlier radicands
    bool independent = true;
    const Rational& m = d->gens.back().square[0];
    for (std::size_t mask = 0; mask < half && independent; ++mask) {
      Rational prod = m;
      for (unsigned i = 0; i < t; ++i)
        if (mask >> i & 1) prod *= data_->gens[i].square[0];
      if (rational_square(prod)) independent = false;
    }
    if (independent) d->certified = t + 1;
  }
  return TowerContext(std::move(d));
}

std::shared_ptr<const EmbeddingSet> TowerContext::embeddings(unsigned bits, unsigned max_bits) const {
  {
    std::lock_guard lock(data_->cache_mutex);
    auto it = data_->embedding_cache.lower_bound(bits);
    if (it != data_->embedding_cache.end() && it->first <= 2 * bits) return it->second;
  }
  auto set = std::make_shared<const EmbeddingSet>(embed_all(*this, bits, max_bits));
  std::lock_guard lock(data_->cache_mutex);
  data_->embedding_cache[set->bits()] = set;
  return set;
}

bool TowerContext::totally_real() const {
  {
    std::lock_guard lock(data_->cache_mutex);
    if (data_->totally_real >= 0) return data_->totally_real == 1;
  }
  bool r = embeddings(128)->all_real();
  std::lock_guard lock(data_->cache_mutex);
  data_->totally_real = r ? 1 : 0;
  return r;
}

TowerContext unify(const TowerContext& a, const TowerContext& b) {
  if (a.data_ == b.data_) return a;
  if (a.extends(b)) return a;
  if (b.extends(a)) return b;
  fail(ErrorCode::context_mismatch, "incompatible towers " + a.signature() + " and " + b.signature());
}

// ---------------------------------------------------------------- element

TowerElement::TowerElement() : ctx_(TowerContext::rational()), c_(1) {}

TowerElement::TowerElement(const TowerContext& ctx, const Rational& q) : ctx_(ctx), c_(ctx.degree()) {
  c_[0] = q;
}

TowerElement::TowerElement(const TowerContext& ctx, std::vector<Rational> coeffs)
    : ctx_(ctx), c_(std::move(coeffs)) {
  if (c_.size() > ctx.degree()) fail(ErrorCode::context_mismatch, "too many coefficients for context");
  c_.resize(ctx.degree());
}

TowerElement TowerElement::generator(const TowerContext& ctx, unsigned i) {
  if (i >= ctx.generator_count()) fail(ErrorCode::context_mismatch, "generator index out of range");
  TowerElement e(ctx, Rational(0));
  e.c_[std::size_t(1) << i] = 1;
  return e;
}

bool TowerElement::formally_zero() const { return all_zero(c_.data(), c_.size()); }

bool TowerElement::is_rational() const { return all_zero(c_.data() + 1, c_.size() - 1); }

const Rational& TowerElement::rational_value() const {
  if (!is_rational()) fail(ErrorCode::rational_context, "element " + str() + " is not rational");
  return c_[0];
}

bool TowerElement::is_one() const { return is_rational() && c_[0] == 1; }

unsigned TowerElement::support_level() const {
  for (std::size_t i = c_.size(); i-- > 1;)
    if (sgn(c_[i]) != 0) {
      unsigned lvl = 0;
      while ((std::size_t(1) << lvl) <= i) ++lvl;
      return lvl;
    }
  return 0;
}

bool TowerElement::is_zero() const {
  if (formally_zero()) return true;
  const unsigned s = support_level();
  if (s <= ctx_.certified_levels()) return false;
  const auto& g = ctx_.raw()->gens;
  Coeffs a(c_.begin(), c_.begin() + (std::ptrdiff_t(1) << s));
  if (sgn(norm_rec(g, s, a)) != 0) return false;
  // zero divisor: locate the collapsing radicand (throws SquareDetected)
  inv_rec(*ctx_.raw(), s, a);
  fail(ErrorCode::division_by_zero, "zero divisor without square witness");
}

TowerElement TowerElement::lift(const TowerContext& ctx) const {
  if (ctx.raw() == ctx_.raw()) return *this;
  if (!ctx.extends(ctx_)) fail(ErrorCode::context_mismatch, "cannot lift into an unrelated tower");
  TowerElement r(ctx, c_);
  return r;
}

TowerElement TowerElement::operator-() const {
  TowerElement r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

TowerElement& TowerElement::operator+=(const TowerElement& o) {
  if (o.ctx_.raw() != ctx_.raw()) {
    TowerContext u = unify(ctx_, o.ctx_);
    if (u.raw() != ctx_.raw()) *this = lift(u);
    const auto& oc = o.c_;
    for (std::size_t i = 0; i < oc.size(); ++i) c_[i] += oc[i];
    return *this;
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

TowerElement& TowerElement::operator-=(const TowerElement& o) {
  if (o.ctx_.raw() != ctx_.raw()) {
    TowerContext u = unify(ctx_, o.ctx_);
    if (u.raw() != ctx_.raw()) *this = lift(u);
  }
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

TowerElement operator*(const TowerElement& a, const TowerElement& b) {
  if (a.is_rational()) return b * a.c_[0];
  if (b.is_rational()) return a * b.c_[0];
  TowerContext u = a.ctx_.raw() == b.ctx_.raw() ? a.ctx_ : unify(a.ctx_, b.ctx_);
  const unsigned level = std::max(a.support_level(), b.support_level());
  const std::size_t n = std::size_t(1) << level;
  Coeffs x(a.c_.begin(), a.c_.begin() + std::min(n, a.c_.size()));
  Coeffs y(b.c_.begin(), b.c_.begin() + std::min(n, b.c_.size()));
  x.resize(n);
  y.resize(n);
  Coeffs z = mul(u.raw()->gens, level, x, y);
  return TowerElement(u, std::move(z));
}

TowerElement& TowerElement::operator*=(const TowerElement& o) { return *this = *this * o; }

TowerElement& TowerElement::operator*=(const Rational& q) {
  if (sgn(q) == 0) {
    for (auto& c : c_) c = 0;
    return *this;
  }
  for (auto& c : c_)
    if (sgn(c) != 0) c *= q;
  return *this;
}

TowerElement operator/(const TowerElement& a, const TowerElement& b) { return a * invert(b); }

bool TowerElement::equals(const TowerElement& o) const { return (*this - o).is_zero(); }

bool TowerElement::identical(const TowerElement& o) const { return (*this - o).formally_zero(); }

std::string TowerElement::str() const {
  std::ostringstream os;
  bool first = true;
  const auto& gens = ctx_.raw()->gens;
  for (std::size_t m = 0; m < c_.size(); ++m) {
    if (sgn(c_[m]) == 0) continue;
    Rational c = c_[m];
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (unsigned i = 0; i < gens.size(); ++i)
      if (m >> i & 1) mono += (mono.empty() ? "" : "*") + gens[i].name;
    if (mono.empty())
      os << c.get_str();
    else if (c == 1)
      os << mono;
    else
      os << c.get_str() << "*" << mono;
  }
  if (first) return "0";
  return os.str();
}

// ---------------------------------------------------------------- operations

TowerElement invert(const TowerElement& x) {
  if (x.formally_zero()) fail(ErrorCode::division_by_zero, "inverse of zero");
  if (x.is_rational()) return TowerElement(x.context(), 1 / x.coeffs()[0]);
  const unsigned s = x.support_level();
  Coeffs a(x.coeffs().begin(), x.coeffs().begin() + (std::ptrdiff_t(1) << s));
  return TowerElement(x.context(), inv_rec(*x.context().raw(), s, a));
}

TowerElement relative_conjugate(const TowerElement& x) {
  const unsigned t = x.context().generator_count();
  if (t == 0) fail(ErrorCode::rational_context, "relative conjugate over Q");
  TowerElement r = x;
  auto c = r.coeffs();
  const std::size_t h = std::size_t(1) << (t - 1);
  for (std::size_t i = h; i < c.size(); ++i) c[i] = -c[i];
  return TowerElement(x.context(), std::move(c));
}

Rational field_norm(const TowerElement& x) {
  const unsigned t = x.context().generator_count();
  Rational n = norm_rec(x.context().raw()->gens, t, x.coeffs());
  return n;
}

Rational trace(const TowerElement& x) { return x.coeffs()[0] * Rational(Integer(x.context().degree())); }

std::vector<Rational> pencil_norm(const TowerElement& y1_in, const TowerElement& y2_in) {
  TowerContext u = unify(y1_in.context(), y2_in.context());
  const auto& g = u.raw()->gens;
  unsigned level = u.generator_count();
  // polynomial in t with coefficient vectors at `level`
  std::vector<Coeffs> p = {y1_in.lift(u).coeffs(), y2_in.lift(u).coeffs()};
  while (level > 0) {
    const std::size_t h = std::size_t(1) << (level - 1);
    std::vector<Coeffs> p0, p1;
    for (const auto& c : p) {
      p0.emplace_back(c.begin(), c.begin() + h);
      p1.emplace_back(c.begin() + h, c.end());
    }
    std::vector<Coeffs> out(2 * p.size() - 1, Coeffs(h));
    bool p1_zero = true;
    for (const auto& c : p1) p1_zero = p1_zero && all_zero(c.data(), h);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) {
        Coeffs s = mul(g, level - 1, p0[i], p0[j]);
        if (!p1_zero) {
          Coeffs t = mul(g, level - 1, p1[i], p1[j]);
          Coeffs dt = mul(g, level - 1, g[level - 1].square, t);
          for (std::size_t k = 0; k < h; ++k) s[k] -= dt[k];
        }
        for (std::size_t k = 0; k < h; ++k) out[i + j][k] += s[k];
      }
    p = std::move(out);
    --level;
  }
  std::vector<Rational> r;
  for (auto& c : p) r.push_back(c[0]);
  return r;
}

TowerElement adjoin_sqrt(const TowerElement& d, TowerContext* out_context) {
  TowerContext ctx = d.context();
  auto done = [&](const TowerContext& c, TowerElement v) {
    if (out_context) *out_context = c;
    return v;
  };
  if (d.is_zero()) fail(ErrorCode::zero_radicand, "square root of zero requested");
  const unsigned t = ctx.generator_count();
  const auto& gens = ctx.raw()->gens;

  if (d.is_rational()) {
    const Rational& q = d.rational_value();
    SquarefreeSplit split = squarefree_split(q.get_num() * q.get_den());
    Rational scale(split.root, q.get_den());
    scale.canonicalize();
    const Integer& core = split.core;
    if (core == 1) return done(ctx, TowerElement(ctx, scale));
    std::vector<unsigned> rat;
    for (unsigned i = 0; i < t; ++i)
      if (gens[i].rational) rat.push_back(i);
    if (rat.size() <= 16) {
      for (std::size_t mask = 1; mask < (std::size_t(1) << rat.size()); ++mask) {
        Rational prod(core), denom(1);
        std::size_t mono = 0;
        for (std::size_t j = 0; j < rat.size(); ++j)
          if (mask >> j & 1) {
            prod *= gens[rat[j]].square[0];
            denom *= gens[rat[j]].square[0];
            mono |= std::size_t(1) << rat[j];
          }
        if (rational_square(prod)) {
          // sqrt(core) = sqrt(prod) / prod(D_j) * prod(g_j)
          std::vector<Rational> c(ctx.degree());
          c[mono] = scale * rational_sqrt(prod) / denom;
          return done(ctx, TowerElement(ctx, std::move(c)));
        }
      }
    }
    TowerContext next = ctx.with_generator({Rational(core)});
    return done(next, TowerElement::generator(next, t) * scale);
  }

  // clear denominators: sqrt(d) = sqrt(d * den^2) / den
  Integer den = 1;
  for (const auto& c : d.coeffs()) den = lcm(den, c.get_den());
  Coeffs dd = d.coeffs();
  Rational den2 = Rational(den * den);
  for (auto& c : dd) c *= den2;
  const Rational inv_den = Rational(1) / Rational(den);
  {
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    auto it = reg.roots.find(registry_key(ctx.signature(), dd.data(), dd.size()));
    if (it != reg.roots.end()) return done(ctx, TowerElement(ctx, it->second) * inv_den);
  }
  // an existing generator whose square is a rational-square multiple of dd
  for (unsigned j = 0; j < t; ++j) {
    const auto& sq = gens[j].square;
    std::size_t k = 0;
    while (k < sq.size() && sgn(sq[k]) == 0) ++k;
    if (k == sq.size() || sgn(dd[k]) == 0) continue;
    Rational rho = dd[k] / sq[k];
    bool match = true;
    for (std::size_t i = 0; i < dd.size() && match; ++i) {
      const Rational expect = i < sq.size() ? rho * sq[i] : Rational(0);
      match = dd[i] == expect;
    }
    if (match && rational_square(rho))
      return done(ctx, TowerElement::generator(ctx, j) * (rational_sqrt(rho) * inv_den));
  }
  TowerContext next = ctx.with_generator(std::move(dd));
  return done(next, TowerElement::generator(next, t) * inv_den);
}

// ---------------------------------------------------------------- parsing

namespace {

class ExprParser {
 public:
  ExprParser(const TowerContext& ctx, const std::string& s) : ctx_(ctx), s_(s) {}

  TowerElement parse() {
    TowerElement v = expr();
    skip();
    if (pos_ != s_.size()) error("trailing input");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorCode::bad_tower_expr, what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  TowerElement expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    TowerElement v = term();
    if (neg) v = -v;
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  TowerElement term() {
    TowerElement v = factor();
    for (;;) {
      if (eat('*'))
        v = v * factor();
      else if (eat('/')) {
        TowerElement f = factor();
        if (f.formally_zero()) error("division by zero");
        v = v / f;
      } else
        return v;
    }
  }
  TowerElement factor() {
    TowerElement base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected exponent");
      unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      TowerElement r(ctx_, Rational(1));
      for (unsigned long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }
  TowerElement atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      TowerElement v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return TowerElement(ctx_, Rational(Integer(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      for (unsigned i = 0; i < ctx_.generator_count(); ++i)
        if (ctx_.generator(i).name == name) return TowerElement::generator(ctx_, i);
      error("unknown generator '" + name + "'");
    }
    error(std::string("unexpected character '") + c + "'");
  }

  const TowerContext& ctx_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

TowerElement parse_element(const TowerContext& ctx, const std::string& text) {
  return ExprParser(ctx, text).parse();
}

}  // namespace qbar
