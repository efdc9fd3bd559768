#include "qbar/rational.hpp"

#include "qbar/errors.hpp"

#include <cctype>

namespace qbar {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::zero_radicand: return "ZeroRadicand";
    case ErrorCode::degree_cap_exceeded: return "DegreeCapExceeded";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::rational_context: return "RationalContext";
    case ErrorCode::precision_cap_exceeded: return "PrecisionCapExceeded";
    case ErrorCode::ambient_mismatch: return "AmbientMismatch";
    case ErrorCode::rank_deficient: return "RankDeficient";
    case ErrorCode::zero_vector: return "ZeroVector";
    case ErrorCode::zero_object: return "ZeroObject";
    case ErrorCode::not_regular: return "NotRegular";
    case ErrorCode::dimension_too_small: return "DimensionTooSmall";
    case ErrorCode::contradicts_regularity: return "ContradictsRegularity";
    case ErrorCode::anisotropic_input: return "AnisotropicInput";
    case ErrorCode::radical_vector: return "RadicalVector";
    case ErrorCode::anisotropic_required: return "AnisotropicRequired";
    case ErrorCode::no_anisotropic_vector: return "NoAnisotropicVector";
    case ErrorCode::domain_mismatch: return "DomainMismatch";
    case ErrorCode::not_an_isometry: return "NotAnIsometry";
    case ErrorCode::unknown_bound_id: return "UnknownBoundId";
    case ErrorCode::bad_params: return "BadParams";
    case ErrorCode::schema_error: return "SchemaError";
    case ErrorCode::asymmetric_gram: return "AsymmetricGram";
    case ErrorCode::bad_tower_expr: return "BadTowerExpr";
    case ErrorCode::context_mismatch: return "ContextMismatch";
    case ErrorCode::proof_gap: return "ProofGap";
  }
  return "Error";
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorCode::bad_tower_expr, "empty rational");
  if (s[0] == '+') s.erase(0, 1);
  auto digits = [](std::string_view v, bool allow_sign) {
    if (v.empty()) return false;
    std::size_t i = (allow_sign && v[0] == '-') ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false)) fail(ErrorCode::bad_tower_expr, "bad rational '" + s + "'");
  Rational q{Integer(num), Integer(den)};
  if (q.get_den() == 0) fail(ErrorCode::bad_tower_expr, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational pow(const Rational& q, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

SquarefreeSplit squarefree_split(const Integer& n) {
  SquarefreeSplit out;
  out.root = 1;
  out.core = n < 0 ? -1 : 1;
  if (n == 0) {
    out.root = 0;
    out.core = 0;
    return out;
  }
  Integer m = abs(n);
  constexpr unsigned long bound = 1000000;
  bool settled = false;
  for (unsigned long p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > m) {
      settled = true;
      break;
    }
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    for (unsigned i = 0; i + 1 < e; i += 2) out.root *= p;
    if (e % 2) out.core *= p;
    // cofactor now has at most two prime factors, all larger than p
    if (Integer(p) * p * p > m) {
      settled = true;
      break;
    }
  }
  if (m > 1) {
    if (is_square(m))
      out.root *= sqrt(m);
    else
      out.core *= m;
  }
  out.complete = settled;
  return out;
}

int compare_roots(const Rational& a, unsigned long m, const Rational& b, unsigned long n) {
  // a^(1/m) vs b^(1/n)  <=>  a^n vs b^m
  Rational lhs = pow(a, n), rhs = pow(b, m);
  return cmp(lhs, rhs);
}

}  // namespace qbar
