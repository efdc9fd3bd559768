#pragma once

#include "qbar/errors.hpp"
#include "qbar/rational.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace qbar {

class TowerElement;
class EmbeddingSet;

namespace detail {
struct ContextData;
struct Family;
}  // namespace detail

struct Generator {
  std::string name;
  std::vector<Rational> square;  // coefficients over the generators below it
  bool rational = false;         // square has no generator terms
};

// Handle to an immutable iterated quadratic extension Q(g1,...,gt), gi^2 = Di.
// Contexts built from one another share a family; the family remembers every
// radicand that turned out to be a square so that reruns avoid it.
class TowerContext {
 public:
  static constexpr unsigned default_degree_cap = 64;

  static TowerContext rational(unsigned degree_cap = default_degree_cap);

  unsigned generator_count() const;
  std::size_t degree() const { return std::size_t(1) << generator_count(); }
  const Generator& generator(unsigned i) const;
  unsigned degree_cap() const;
  const std::string& signature() const;

  TowerContext prefix(unsigned level) const;
  // true when `other` is this context or one of its prefixes
  bool extends(const TowerContext& other) const;
  bool same(const TowerContext& other) const;

  // number of leading generators known to form a field (rational, independent radicands)
  unsigned certified_levels() const;
  bool totally_real() const;  // decided through interval embeddings

  // raw extension, no normalisation; used by parsers and adjoin_sqrt
  TowerContext with_generator(std::vector<Rational> square) const;

  std::shared_ptr<const EmbeddingSet> embeddings(unsigned bits, unsigned max_bits = 4096) const;

  const detail::ContextData* raw() const { return data_.get(); }

 private:
  friend struct detail::ContextData;
  explicit TowerContext(std::shared_ptr<const detail::ContextData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::ContextData> data_;

  friend class TowerElement;
  friend TowerContext unify(const TowerContext&, const TowerContext&);
  friend struct SquareDetected;
  friend TowerElement adjoin_sqrt(const TowerElement& d, TowerContext* out_context);
};

// The longer of two compatible contexts; ContextMismatch otherwise.
TowerContext unify(const TowerContext& a, const TowerContext& b);

class TowerElement {
 public:
  TowerElement();  // rational zero
  TowerElement(const TowerContext& ctx, const Rational& q);
  TowerElement(const TowerContext& ctx, std::vector<Rational> coeffs);
  static TowerElement generator(const TowerContext& ctx, unsigned i);

  const TowerContext& context() const { return ctx_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool formally_zero() const;
  // Exact zero test. In contexts that are not certified fields a nonzero
  // answer is confirmed through the norm, which may raise SquareDetected.
  bool is_zero() const;
  bool is_rational() const;
  const Rational& rational_value() const;  // RationalContext unless is_rational
  bool is_one() const;
  // highest generator index used, plus one (0 for rationals)
  unsigned support_level() const;

  TowerElement lift(const TowerContext& ctx) const;

  TowerElement operator-() const;
  TowerElement& operator+=(const TowerElement& o);
  TowerElement& operator-=(const TowerElement& o);
  TowerElement& operator*=(const TowerElement& o);
  TowerElement& operator*=(const Rational& q);
  friend TowerElement operator+(TowerElement a, const TowerElement& b) { return a += b; }
  friend TowerElement operator-(TowerElement a, const TowerElement& b) { return a -= b; }
  friend TowerElement operator*(const TowerElement& a, const TowerElement& b);
  friend TowerElement operator*(TowerElement a, const Rational& q) { return a *= q; }
  friend TowerElement operator*(const Rational& q, TowerElement a) { return a *= q; }
  friend TowerElement operator/(const TowerElement& a, const TowerElement& b);

  // exact equality through is_zero of the difference
  bool equals(const TowerElement& o) const;
  // coefficientwise identity after lifting (no zero-divisor reasoning)
  bool identical(const TowerElement& o) const;

  std::string str() const;

 private:
  TowerContext ctx_;
  std::vector<Rational> c_;
};

// Raised when a radicand at level `level` is found to be the square of `root`
// (both over the generators below it). The witness is recorded in the family
// registry before the throw so a rerun can pick it up.
struct SquareDetected : std::exception {
  unsigned level;
  std::vector<Rational> radicand;
  std::vector<Rational> root;
  std::string message;
  SquareDetected(unsigned lvl, std::vector<Rational> d, std::vector<Rational> r);
  const char* what() const noexcept override { return message.c_str(); }
};

TowerElement invert(const TowerElement& x);
TowerElement relative_conjugate(const TowerElement& x);
Rational field_norm(const TowerElement& x);
// Norm of y1 + t*y2 down to Q, as coefficients of t^0, t^1, ...
std::vector<Rational> pencil_norm(const TowerElement& y1, const TowerElement& y2);
Rational trace(const TowerElement& x);

// Returns a square root of d, adjoining a generator when needed. The returned
// element lives in *out_context (the context of d or an extension of it).
TowerElement adjoin_sqrt(const TowerElement& d, TowerContext* out_context = nullptr);

TowerElement parse_element(const TowerContext& ctx, const std::string& text);

// Runs `body` and reruns it after every SquareDetected raised above level
// `floor`; failures below that level cannot be repaired here and propagate.
template <class F>
auto with_square_retry(unsigned floor, F&& body) -> decltype(body()) {
  constexpr int max_attempts = 64;
  for (int attempt = 0;; ++attempt) {
    try {
      return body();
    } catch (const SquareDetected& e) {
      if (e.level < floor || attempt + 1 >= max_attempts) throw;
    }
  }
}

}  // namespace qbar
