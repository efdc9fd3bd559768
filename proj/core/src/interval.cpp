#include "qbar/interval.hpp"

#include "qbar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbar {

namespace {

mpfr_prec_t join(const Interval& a, const Interval& b) { return std::max(a.bits(), b.bits()); }

}  // namespace

Interval::Interval(mpfr_prec_t bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, mpfr_prec_t bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi, mpfr_prec_t bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::from_doubles(double lo, double hi, mpfr_prec_t bits) {
  Interval r(bits);
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, o.bits());
  mpfr_init2(hi_, o.bits());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval(o.bits()) {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.bits());
    mpfr_set_prec(hi_, o.bits());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_double() const {
  mpfr_t m;
  mpfr_init2(m, bits() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

Rational Interval::mid_rational() const {
  mpfr_t m;
  mpfr_init2(m, bits() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpz_t z;
  mpz_init(z);
  mpfr_exp_t e = mpfr_get_z_2exp(z, m);
  Rational q(Integer(z), 1);
  if (e >= 0)
    mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  q.canonicalize();
  mpz_clear(z);
  mpfr_clear(m);
  return q;
}

double Interval::width_double() const {
  mpfr_t w;
  mpfr_init2(w, bits());
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::is_point_zero() const { return mpfr_zero_p(lo_) && mpfr_zero_p(hi_); }
bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::nonnegative() const { return mpfr_sgn(lo_) >= 0; }
bool Interval::certainly_le(const Interval& o) const { return mpfr_lessequal_p(hi_, o.lo_); }
bool Interval::certainly_gt(const Interval& o) const { return mpfr_greater_p(lo_, o.hi_); }

Interval Interval::operator-() const {
  Interval r(bits());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  mpfr_prec_t p = join(a, b);
  Interval r(p);
  if (a.is_point_zero() || b.is_point_zero()) return r;
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) fail(ErrorCode::division_by_zero, "interval divisor contains zero");
  mpfr_prec_t p = join(a, b);
  Interval inv(p);
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval sqr(const Interval& a) {
  Interval r(a.bits());
  if (a.contains_zero()) {
    mpfr_set_zero(r.lo_, 1);
    mpfr_t t;
    mpfr_init2(t, a.bits());
    mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
    mpfr_sqr(t, a.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
  } else if (a.positive()) {
    mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
  } else {
    mpfr_sqr(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
  }
  return r;
}

Interval sqrt(const Interval& a) {
  if (a.negative()) fail(ErrorCode::division_by_zero, "sqrt of negative interval");
  Interval r(a.bits());
  if (mpfr_sgn(a.lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (!a.positive()) fail(ErrorCode::precision_cap_exceeded, "log of interval touching zero");
  Interval r(a.bits());
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.bits());
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

std::string Interval::str(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << "[" << lo_double() << ", " << hi_double() << "]";
  return os.str();
}

Interval log_of(const Rational& q, mpfr_prec_t bits) {
  if (q <= 0) fail(ErrorCode::bad_params, "log of non-positive rational");
  // log(num) - log(den) keeps the enclosure tight for huge operands
  Interval n(Rational(q.get_num()), bits + 16);
  Interval d(Rational(q.get_den()), bits + 16);
  return log(n) - log(d);
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re - b.re, a.im - b.im};
}
ComplexInterval operator-(const ComplexInterval& a) { return {-a.re, -a.im}; }

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  if (a.is_real() && b.is_real()) return {a.re * b.re, Interval(a.re.bits())};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator*(const Interval& a, const ComplexInterval& b) { return {a * b.re, a * b.im}; }

Interval norm_sq(const ComplexInterval& a) { return sqr(a.re) + sqr(a.im); }

bool contains_zero(const ComplexInterval& a) { return a.re.contains_zero() && a.im.contains_zero(); }

namespace {

// principal branch, valid when (|z| + re) / 2 is bounded away from zero
bool csqrt_principal(const ComplexInterval& z, ComplexInterval& out) {
  mpfr_prec_t p = z.re.bits();
  Interval m = sqrt(norm_sq(z));
  Interval half(Rational(1, 2), p);
  Interval u2 = (m + z.re) * half;
  if (!u2.positive()) return false;
  Interval u = sqrt(u2);
  Interval two(Rational(2), p);
  out = ComplexInterval(u, z.im / (two * u));
  return true;
}

}  // namespace

bool csqrt(const ComplexInterval& z, ComplexInterval& out) {
  mpfr_prec_t p = z.re.bits();
  if (z.is_real()) {
    if (z.re.positive()) {
      out = ComplexInterval(sqrt(z.re), Interval(p));
      return true;
    }
    if (z.re.negative()) {
      out = ComplexInterval(Interval(p), sqrt(-z.re));
      return true;
    }
    return false;
  }
  if (contains_zero(z)) return false;
  if (mpfr_sgn(z.re.hi()) >= 0 && mpfr_sgn(z.re.lo()) >= 0) return csqrt_principal(z, out);
  if (z.re.mid_double() >= 0) return csqrt_principal(z, out);
  // sqrt(z) = i * sqrt(-z), and -z sits in the right half plane
  ComplexInterval w(p);
  if (!csqrt_principal(-z, w)) return false;
  out = ComplexInterval(-w.im, w.re);
  return true;
}

}  // namespace qbar
