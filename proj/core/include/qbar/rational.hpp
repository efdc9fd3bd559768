#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qbar {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "p/q", optionally signed, surrounding blanks ignored.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);
Rational pow(const Rational& q, unsigned long e);

bool is_square(const Integer& n);

// n = root^2 * core. `complete` is false when a cofactor could not be
// proven squarefree (only possible for |n| beyond ~10^18 after trial division).
struct SquarefreeSplit {
  Integer root;
  Integer core;
  bool complete = true;
};
SquarefreeSplit squarefree_split(const Integer& n);

// Exact comparison of a^(1/m) against b^(1/n) for positive rationals.
int compare_roots(const Rational& a, unsigned long m, const Rational& b, unsigned long n);

}  // namespace qbar
