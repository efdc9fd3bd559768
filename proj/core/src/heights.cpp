#include "qbar/heights.hpp"

#include "qbar/embedding.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace qbar {

namespace {

void require_nonzero(std::span<const TowerElement> x) {
  for (const auto& e : x)
    if (!e.is_zero()) return;
  fail(ErrorCode::zero_vector, "height of the zero vector");
}

unsigned max_support(std::span<const TowerElement> x) {
  unsigned s = 0;
  for (const auto& e : x) s = std::max(s, e.support_level());
  return s;
}

// re-express x over the smallest prefix of its tower that contains it
Vector restrict_to_support(std::span<const TowerElement> x) {
  TowerContext u = context_of(Vector(x.begin(), x.end()));
  TowerContext p = u.prefix(max_support(x));
  Vector out;
  out.reserve(x.size());
  for (const auto& e : x) {
    const std::size_t k = std::min(p.degree(), e.coeffs().size());
    std::vector<Rational> c(e.coeffs().begin(), e.coeffs().begin() + static_cast<std::ptrdiff_t>(k));
    out.emplace_back(p, std::move(c));
  }
  return out;
}

Integer fdiv_mod(const Integer& a, unsigned long m) { return Integer(mpz_fdiv_ui(a.get_mpz_t(), m)); }

}  // namespace

// ---------------------------------------------------------------- finite parts

Interval FinitePart::log_enclosure(unsigned bits) const {
  Interval l = log_of(power, bits);
  return l / Interval(Rational(Integer(degree)), bits);
}

double FinitePart::value() const { return std::pow(power.get_d(), 1.0 / static_cast<double>(degree)); }

PrimeContentTable prime_contents(const FinitePart& fp) {
  PrimeContentTable t;
  auto strip = [&t](Integer n, long sign) {
    for (unsigned long p = 2; p < 100000 && n > 1; p += (p == 2 ? 1 : 2)) {
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        t.exponents[Integer(p)] += sign;
      }
    }
    if (n > 1) t.cofactor *= n;
  };
  strip(fp.power.get_num(), 1);
  strip(fp.power.get_den(), -1);
  for (auto it = t.exponents.begin(); it != t.exponents.end();)
    it = it->second == 0 ? t.exponents.erase(it) : std::next(it);
  return t;
}

FinitePart finite_part_rational(std::span<const TowerElement> x) {
  require_nonzero(x);
  Integer l = 1;
  for (const auto& e : x) l = lcm(l, e.rational_value().get_den());
  Integer g = 0;
  for (const auto& e : x) {
    Rational s = e.rational_value() * Rational(l);
    g = gcd(g, s.get_num());
  }
  Rational fp(l, g);
  fp.canonicalize();
  return {fp, 1};
}

FinitePart finite_part_quadratic(std::span<const TowerElement> x) {
  require_nonzero(x);
  TowerContext ctx = context_of(Vector(x.begin(), x.end()));
  if (ctx.generator_count() < 1 || !ctx.generator(0).rational || max_support(x) > 1)
    fail(ErrorCode::bad_params, "quadratic finite part needs a vector over Q(sqrt m)");
  const Rational& mq = ctx.generator(0).square[0];
  if (mq.get_den() != 1) fail(ErrorCode::bad_params, "quadratic radicand must be an integer");
  const Integer m = mq.get_num();
  SquarefreeSplit sf = squarefree_split(m);
  if (!sf.complete || sf.root != 1) fail(ErrorCode::bad_params, "quadratic radicand not certified squarefree");
  const bool one_mod_four = fdiv_mod(m, 4) == 1;
  // coordinates over (1, w), w = sqrt m or (1 + sqrt m)/2
  std::vector<std::pair<Rational, Rational>> gens;
  for (const auto& e : x) {
    const Rational& a = e.coeffs()[0];
    const Rational& b = e.coeffs().size() > 1 ? e.coeffs()[1] : Rational(0);
    Rational u = one_mod_four ? Rational(a - b) : a;
    Rational v = one_mod_four ? Rational(2 * b) : b;
    gens.emplace_back(u, v);
    if (one_mod_four)
      gens.emplace_back(v * Rational(m - 1, 4), u + v);
    else
      gens.emplace_back(v * Rational(m), u);
  }
  Integer den = 1;
  for (const auto& [u, v] : gens) den = lcm(lcm(den, u.get_den()), v.get_den());
  std::vector<std::pair<Integer, Integer>> ints;
  for (const auto& [u, v] : gens) {
    Rational uu = u * Rational(den), vv = v * Rational(den);
    ints.emplace_back(uu.get_num(), vv.get_num());
  }
  Integer g = 0;
  for (std::size_t i = 0; i < ints.size(); ++i)
    for (std::size_t j = i + 1; j < ints.size(); ++j)
      g = gcd(g, ints[i].first * ints[j].second - ints[i].second * ints[j].first);
  if (g == 0) fail(ErrorCode::zero_vector, "degenerate ideal");
  // fp^2 = 1 / N(I) with N(I) = g / den^2
  Rational fp(den * den, g);
  fp.canonicalize();
  return {fp, 2};
}

FinitePart finite_part_gauss(std::span<const TowerElement> x_in, const HeightOptions& opt) {
  require_nonzero(x_in);
  Vector x = restrict_to_support(x_in);
  TowerContext ctx = context_of(x);
  std::size_t first = 0;
  while (x[first].is_zero()) ++first;
  TowerElement inv = invert(x[first]);
  Vector y;
  for (std::size_t i = first + 1; i < x.size(); ++i)
    if (!x[i].formally_zero()) y.push_back(x[i] * inv);
  const TowerElement one(ctx, Rational(1));
  Integer l = 1;
  auto absorb = [&](const TowerElement& v) {
    for (const auto& c : pencil_norm(one, v)) l = lcm(l, c.get_den());
  };
  for (const auto& v : y) absorb(v);
  if (y.size() > 1 && y.size() <= 16)
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = i + 1; j < y.size(); ++j) absorb(y[i] + y[j]);
  if (y.size() > 1) {
    std::mt19937_64 rng(opt.seed);
    for (unsigned t = 1; t <= opt.trials; ++t) {
      const std::uint64_t span = (std::uint64_t(1) << std::min(t, 20u)) * 2 + 1;
      TowerElement v(ctx, Rational(0));
      for (const auto& yi : y) {
        long c = static_cast<long>(rng() % span) - static_cast<long>(span / 2);
        if (c != 0) v += yi * Rational(c);
      }
      if (!v.formally_zero()) absorb(v);
    }
  }
  Rational n = field_norm(x[first]);
  Rational fp(l);
  fp /= abs(n);
  return {fp, static_cast<unsigned long>(ctx.degree())};
}

FinitePart finite_part(std::span<const TowerElement> x_in, const HeightOptions& opt) {
  require_nonzero(x_in);
  Vector x = restrict_to_support(x_in);
  TowerContext ctx = context_of(x);
  if (ctx.generator_count() == 0) return finite_part_rational(x);
  if (ctx.generator_count() == 1 && ctx.generator(0).rational && ctx.generator(0).square[0].get_den() == 1) {
    SquarefreeSplit sf = squarefree_split(ctx.generator(0).square[0].get_num());
    if (sf.complete && sf.root == 1) return finite_part_quadratic(x);
  }
  return finite_part_gauss(x, opt);
}

// ---------------------------------------------------------------- heights

HeightValue::HeightValue() : arch_(Rational(1)) {}

double HeightValue::lo() const { return exp(log_).lo_double(); }
double HeightValue::hi() const { return exp(log_).hi_double(); }
double HeightValue::mid() const { return std::exp(log_.mid_double()); }

namespace {

Interval archimedean_log(const Vector& x, const TowerContext& ctx, unsigned bits, unsigned max_bits, unsigned* used) {
  for (unsigned b = bits; b <= max_bits; b *= 2) {
    auto emb = ctx.embeddings(b, max_bits);
    const unsigned eb = emb->bits();
    Interval total(eb);
    bool ok = true;
    for (std::size_t e = 0; e < emb->count() && ok; ++e) {
      Interval s(eb);
      for (const auto& xi : x)
        if (!xi.formally_zero()) s += norm_sq(emb->evaluate(e, xi));
      if (!s.positive()) {
        ok = false;
        break;
      }
      total += log(s);
    }
    if (ok) {
      *used = eb;
      return total / Interval(Rational(Integer(2 * ctx.degree())), eb);
    }
  }
  fail(ErrorCode::precision_cap_exceeded, "archimedean factor not separated from zero");
}

}  // namespace

HeightValue HeightValue::refined(unsigned bits) const {
  if (bits <= bits_) return *this;
  HeightValue h = *this;
  h.bits_ = bits;
  if (arch_) {
    h.log_ = fp_.log_enclosure(bits) + log_of(*arch_, bits) / Interval(Rational(Integer(2 * arch_degree_)), bits);
    return h;
  }
  if (!source_) return h;
  unsigned used = bits;
  TowerContext ctx = context_of(*source_);
  h.log_ = fp_.log_enclosure(bits) + archimedean_log(*source_, ctx, bits, std::max(bits, max_bits_), &used);
  h.bits_ = used;
  return h;
}

HeightValue height_vector(std::span<const TowerElement> x_in, const HeightOptions& opt) {
  require_nonzero(x_in);
  Vector x = restrict_to_support(x_in);
  TowerContext ctx = context_of(x);
  HeightValue h;
  h.fp_ = finite_part(x, opt);
  h.arch_degree_ = ctx.degree();
  h.bits_ = opt.bits;
  h.max_bits_ = opt.max_bits;
  if (ctx.generator_count() == 0 || ctx.totally_real()) {
    TowerElement s(ctx, Rational(0));
    for (const auto& xi : x)
      if (!xi.formally_zero()) s += xi * xi;
    h.arch_ = field_norm(s);
    h.log_ = h.fp_.log_enclosure(opt.bits) +
             log_of(*h.arch_, opt.bits) / Interval(Rational(Integer(2 * ctx.degree())), opt.bits);
  } else {
    h.arch_.reset();
    unsigned used = opt.bits;
    h.log_ = h.fp_.log_enclosure(opt.bits) + archimedean_log(x, ctx, opt.bits, opt.max_bits, &used);
    h.bits_ = used;
  }
  h.source_ = std::make_shared<const Vector>(std::move(x));
  return h;
}

int compare_heights(const HeightValue& a, const HeightValue& b) {
  if (a.exact() && b.exact()) {
    const unsigned long da = a.finite_part().degree, db = b.finite_part().degree;
    const unsigned long ea = 2 * a.archimedean_degree(), eb = 2 * b.archimedean_degree();
    unsigned long m = std::lcm(std::lcm(da, ea), std::lcm(db, eb));
    Rational va = pow(a.finite_part().power, m / da) * pow(*a.archimedean_norm(), m / ea);
    Rational vb = pow(b.finite_part().power, m / db) * pow(*b.archimedean_norm(), m / eb);
    int c = cmp(va, vb);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (a.log_enclosure().certainly_gt(b.log_enclosure())) return 1;
  if (b.log_enclosure().certainly_gt(a.log_enclosure())) return -1;
  double ma = a.log_enclosure().mid_double(), mb = b.log_enclosure().mid_double();
  return ma < mb ? -1 : (ma > mb ? 1 : 0);
}

HeightValue height_inhom(std::span<const TowerElement> x, const HeightOptions& opt) {
  TowerContext ctx = context_of(Vector(x.begin(), x.end()));
  Vector v;
  v.reserve(x.size() + 1);
  v.emplace_back(ctx, Rational(1));
  v.insert(v.end(), x.begin(), x.end());
  return height_vector(v, opt);
}

HeightValue height_subspace(const Subspace& z, const HeightOptions& opt) {
  if (z.dim() == 0) return HeightValue();
  std::string key = "height:" + std::to_string(opt.bits) + ":" + std::to_string(opt.trials) + ":" +
                    std::to_string(opt.seed);
  return *z.memo<HeightValue>(key, [&] { return height_vector(z.grassmann(), opt); });
}

Vector gram_entries(const Matrix& f) { return f.entries(); }

Vector form_coefficients(const Matrix& f) {
  Vector v;
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = i; j < f.cols(); ++j) v.push_back(i == j ? f(i, j) : f(i, j) * Rational(2));
  return v;
}

namespace {
void require_nonzero_matrix(const Matrix& f) {
  for (const auto& e : f.entries())
    if (!e.is_zero()) return;
  fail(ErrorCode::zero_object, "height of the zero matrix");
}
}  // namespace

HeightValue height_gram(const Matrix& f, const HeightOptions& opt) {
  require_nonzero_matrix(f);
  Vector v = gram_entries(f);
  return height_vector(v, opt);
}

HeightValue height_form_poly(const Matrix& f, const HeightOptions& opt) {
  require_nonzero_matrix(f);
  Vector v = form_coefficients(f);
  return height_vector(v, opt);
}

}  // namespace qbar
