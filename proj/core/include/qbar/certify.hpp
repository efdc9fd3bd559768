#pragma once

#include "qbar/heights.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qbar {

enum class Verdict { verified, violated, inconclusive };
std::string_view verdict_name(Verdict v);

// One factor base^exponent of a product compared in the log domain.
struct LogTerm {
  enum class Kind { constant, height, opaque };
  Kind kind = Kind::constant;
  Rational base{1};  // constant: positive rational
  HeightValue height;
  Rational lo{1}, hi{1};  // opaque: value known only to lie in [lo, hi]
  Rational exponent{1};
};

class LogProduct {
 public:
  LogProduct() = default;  // empty product, value 1
  static LogProduct constant(const Rational& q);
  static LogProduct of(const HeightValue& h);
  static LogProduct opaque(const Rational& lo, const Rational& hi);

  LogProduct& operator*=(const LogProduct& o);
  friend LogProduct operator*(LogProduct a, const LogProduct& b) { return a *= b; }
  LogProduct pow(const Rational& e) const;

  Interval log_enclosure(unsigned bits) const;
  bool exact() const;
  const std::vector<LogTerm>& terms() const { return terms_; }

 private:
  std::vector<LogTerm> terms_;
};

struct BoundParams {
  std::map<std::string, long> ints;
  std::map<std::string, HeightValue> heights;
  std::map<std::string, std::vector<HeightValue>> lists;

  BoundParams& set(const std::string& k, long v) {
    ints[k] = v;
    return *this;
  }
  BoundParams& set(const std::string& k, const HeightValue& h) {
    heights[k] = h;
    return *this;
  }
  BoundParams& set(const std::string& k, std::vector<HeightValue> hs) {
    lists[k] = std::move(hs);
    return *this;
  }
  long integer(const std::string& k) const;
  const HeightValue& height(const std::string& k) const;
  const std::vector<HeightValue>& list(const std::string& k) const;
};

struct CheckOptions {
  unsigned bits_start = 128;
  unsigned bits_max = 4096;
};

struct BoundCertificate {
  std::string bound_id;
  std::map<std::string, long> int_params;
  std::map<std::string, std::pair<double, double>> height_params;  // (lo, hi)
  std::map<std::string, std::vector<std::pair<double, double>>> list_params;
  double lhs_lo = 0, lhs_hi = 0;  // linear scale
  double lhs_log_lo = 0, lhs_log_hi = 0;
  double rhs_log_lo = 0, rhs_log_hi = 0;
  Verdict verdict = Verdict::inconclusive;
  bool exact_decision = false;
  unsigned bits = 0;
  std::vector<std::string> caveats;
  std::string site;
  int level = 0;
  bool trace = false;
  double slack() const { return rhs_log_lo - lhs_log_hi; }  // log scale
};

std::vector<std::string> bound_catalog();
bool is_known_bound(const std::string& id);
bool is_trace_bound(const std::string& id);
LogProduct bound_rhs(const std::string& id, const BoundParams& params);
Interval bound_rhs_log(const std::string& id, const BoundParams& params, unsigned bits);

// lhs <= rhs(params) with precision escalation and an exact fallback.
BoundCertificate check(const std::string& id, const LogProduct& lhs, const BoundParams& params,
                       const CheckOptions& opt = {});
// lhs <= rhs for explicit products.
BoundCertificate compare(const std::string& id, const LogProduct& lhs, const LogProduct& rhs,
                         const CheckOptions& opt = {});

// Exact decision of lhs <= rhs when every factor is exact and the sizes stay
// reasonable; nullopt otherwise.
std::optional<bool> exact_le(const LogProduct& lhs, const LogProduct& rhs);

// Collects certificates emitted along a construction.
struct CertificateLog {
  std::vector<BoundCertificate> items;
  CheckOptions options;
  bool trace_enabled = false;
  std::string site_prefix;

  void add(BoundCertificate c) { items.push_back(std::move(c)); }
  // emits a catalog certificate; trace bounds are skipped unless enabled
  void emit(const std::string& id, const LogProduct& lhs, const BoundParams& params, const std::string& site,
            int level = 0, std::vector<std::string> caveats = {});
};

}  // namespace qbar
