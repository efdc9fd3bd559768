#pragma once

#include "qbar/rational.hpp"

#include <mpfr.h>

#include <string>

namespace qbar {

// Closed real interval with MPFR endpoints; every operation rounds outward.
class Interval {
 public:
  explicit Interval(mpfr_prec_t bits = 128);
  Interval(const Rational& q, mpfr_prec_t bits);
  Interval(const Rational& lo, const Rational& hi, mpfr_prec_t bits);
  static Interval from_doubles(double lo, double hi, mpfr_prec_t bits);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  mpfr_prec_t bits() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up
  double mid_double() const;
  Rational mid_rational() const;
  double width_double() const;

  bool contains_zero() const;
  bool is_point_zero() const;
  bool positive() const;  // lo > 0
  bool negative() const;  // hi < 0
  bool nonnegative() const;
  bool certainly_le(const Interval& o) const;  // hi <= o.lo
  bool certainly_gt(const Interval& o) const;  // lo > o.hi

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  friend Interval sqr(const Interval& a);
  friend Interval sqrt(const Interval& a);
  friend Interval log(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval hull(const Interval& a, const Interval& b);

  std::string str(int digits = 12) const;

 private:
  mpfr_t lo_, hi_;
};

Interval log_of(const Rational& q, mpfr_prec_t bits);  // q > 0

struct ComplexInterval {
  Interval re, im;
  explicit ComplexInterval(mpfr_prec_t bits = 128) : re(bits), im(bits) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  bool is_real() const { return im.is_point_zero(); }
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const Interval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a);
Interval norm_sq(const ComplexInterval& a);
bool contains_zero(const ComplexInterval& a);
// A square root of z; returns false when the enclosure is too wide to pick one.
bool csqrt(const ComplexInterval& z, ComplexInterval& out);

}  // namespace qbar
