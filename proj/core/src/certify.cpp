#include "qbar/certify.hpp"

#include <functional>
#include <numeric>

namespace qbar {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

// ---------------------------------------------------------------- products

LogProduct LogProduct::constant(const Rational& q) {
  if (sgn(q) <= 0) fail(ErrorCode::bad_params, "constant factor must be positive");
  LogProduct p;
  LogTerm t;
  t.kind = LogTerm::Kind::constant;
  t.base = q;
  p.terms_.push_back(std::move(t));
  return p;
}

LogProduct LogProduct::of(const HeightValue& h) {
  LogProduct p;
  LogTerm t;
  t.kind = LogTerm::Kind::height;
  t.height = h;
  p.terms_.push_back(std::move(t));
  return p;
}

LogProduct LogProduct::opaque(const Rational& lo, const Rational& hi) {
  if (sgn(lo) <= 0 || hi < lo) fail(ErrorCode::bad_params, "opaque factor needs 0 < lo <= hi");
  LogProduct p;
  LogTerm t;
  t.kind = LogTerm::Kind::opaque;
  t.lo = lo;
  t.hi = hi;
  p.terms_.push_back(std::move(t));
  return p;
}

LogProduct& LogProduct::operator*=(const LogProduct& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

LogProduct LogProduct::pow(const Rational& e) const {
  LogProduct p = *this;
  for (auto& t : p.terms_) t.exponent *= e;
  return p;
}

Interval LogProduct::log_enclosure(unsigned bits) const {
  Interval acc(bits);
  for (const auto& t : terms_) {
    if (sgn(t.exponent) == 0) continue;
    Interval e(t.exponent, bits);
    switch (t.kind) {
      case LogTerm::Kind::constant:
        if (t.base != 1) acc += log_of(t.base, bits) * e;
        break;
      case LogTerm::Kind::height:
        acc += t.height.refined(bits).log_enclosure() * e;
        break;
      case LogTerm::Kind::opaque:
        acc += log(Interval(t.lo, t.hi, bits)) * e;
        break;
    }
  }
  return acc;
}

bool LogProduct::exact() const {
  for (const auto& t : terms_) {
    if (t.kind == LogTerm::Kind::opaque) return false;
    if (t.kind == LogTerm::Kind::height && !t.height.exact()) return false;
  }
  return true;
}

std::optional<bool> exact_le(const LogProduct& lhs, const LogProduct& rhs) {
  if (!lhs.exact() || !rhs.exact()) return std::nullopt;
  std::vector<std::pair<Rational, Rational>> factors;  // base, exponent
  auto collect = [&factors](const LogProduct& p, int sign) {
    for (const auto& t : p.terms()) {
      Rational e = t.exponent * sign;
      if (t.kind == LogTerm::Kind::constant) {
        factors.emplace_back(t.base, e);
      } else {
        const auto& h = t.height;
        factors.emplace_back(h.finite_part().power, e / Rational(Integer(h.finite_part().degree)));
        factors.emplace_back(*h.archimedean_norm(), e / Rational(Integer(2 * h.archimedean_degree())));
      }
    }
  };
  collect(lhs, 1);
  collect(rhs, -1);
  Integer m = 1;
  for (const auto& [b, e] : factors) m = lcm(m, e.get_den());
  // size guard on the exact powers
  Integer total_bits = 0;
  for (const auto& [b, e] : factors) {
    Rational me = e * Rational(m);
    Integer sz = Integer(mpz_sizeinbase(b.get_num_mpz_t(), 2) + mpz_sizeinbase(b.get_den_mpz_t(), 2));
    total_bits += abs(me.get_num()) * sz;
  }
  if (total_bits > Integer(1) << 24) return std::nullopt;
  Rational value = 1;
  for (const auto& [b, e] : factors) {
    Rational me = e * Rational(m);
    Integer n = me.get_num();
    if (n == 0 || b == 1) continue;
    unsigned long en = Integer(abs(n)).get_ui();
    Rational p = qbar::pow(b, en);
    if (n > 0)
      value *= p;
    else
      value /= p;
  }
  return value <= 1;
}

// ---------------------------------------------------------------- params

long BoundParams::integer(const std::string& k) const {
  auto it = ints.find(k);
  if (it == ints.end()) fail(ErrorCode::bad_params, "missing integer parameter " + k);
  return it->second;
}

const HeightValue& BoundParams::height(const std::string& k) const {
  auto it = heights.find(k);
  if (it == heights.end()) fail(ErrorCode::bad_params, "missing height parameter " + k);
  return it->second;
}

const std::vector<HeightValue>& BoundParams::list(const std::string& k) const {
  auto it = lists.find(k);
  if (it == lists.end()) fail(ErrorCode::bad_params, "missing height list " + k);
  return it->second;
}

// ---------------------------------------------------------------- catalog

namespace {

using Builder = std::function<LogProduct(const BoundParams&)>;

Rational R(long v) { return Rational(v); }
Rational R(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}
LogProduct C(const Rational& q) { return LogProduct::constant(q); }
LogProduct C(long q) { return LogProduct::constant(Rational(q)); }
LogProduct three(const Rational& e) { return C(3).pow(e); }
LogProduct H(const BoundParams& p, const std::string& name) { return LogProduct::of(p.height(name)); }
LogProduct H(const BoundParams& p, const std::string& name, const Rational& e) { return H(p, name).pow(e); }
LogProduct product(const BoundParams& p, const std::string& name) {
  LogProduct r;
  for (const auto& h : p.list(name)) r *= LogProduct::of(h);
  return r;
}

long positive(const BoundParams& p, const std::string& name) {
  long v = p.integer(name);
  if (v < 1) fail(ErrorCode::bad_params, name + " must be at least 1");
  return v;
}

long nonneg(const BoundParams& p, const std::string& name) {
  long v = p.integer(name);
  if (v < 0) fail(ErrorCode::bad_params, name + " must be non-negative");
  return v;
}

struct Entry {
  Builder build;
  bool trace;
};

const std::map<std::string, Entry>& catalog() {
  static const std::map<std::string, Entry> table = [] {
    std::map<std::string, Entry> t;
    auto add = [&t](const std::string& id, Builder b, bool trace = false) { t[id] = Entry{std::move(b), trace}; };

    add("qz_bound", [](const BoundParams& p) { return C(2) * H(p, "HF", R(1, 2)); });
    add("zero_eq", [](const BoundParams& p) {
      long L = positive(p, "L");
      return C(8) * three(R(2 * (L - 1))) * H(p, "HF", R(1, 2)) * H(p, "HZ", R(4, L));
    });
    add("vaaler_even", [](const BoundParams& p) {
      long k = positive(p, "k");
      return C(24) * C(2).pow(R(k - 1, 4)) * three(R(k * k * (k + 1) * (k + 1), 4)) * H(p, "HF", R(k * k, 2)) *
             H(p, "HZ", R(k * k + k + 2, 2 * k));
    });
    add("vaaler_odd", [](const BoundParams& p) {
      long k = positive(p, "k");
      return three(R(2 * k * (k + 1) * (k + 1) * (k + 1))) * H(p, "HF", R(k * k)) * H(p, "HZ", R(4 * k, 3));
    });
    add("siegel3", [](const BoundParams& p) {
      long L = positive(p, "L");
      return three(R(L * (L - 1), 2)) * H(p, "HZ");
    });
    add("siegel3_h", [](const BoundParams& p) {
      long L = positive(p, "L");
      return three(R(L * (L - 1), 2)) * H(p, "HZ");
    }, true);
    add("regular2", [](const BoundParams& p) {
      long L = positive(p, "L"), r = nonneg(p, "r");
      return three(R(L * (L - 1), 2)) * H(p, "HF", R(r)) * H(p, "HZ", R(2));
    });
    add("regular3", [](const BoundParams& p) {
      long L = positive(p, "L");
      return three(R(L * (L - 1), 2)) * H(p, "HZ");
    });
    add("anis", [](const BoundParams& p) {
      long L = positive(p, "L");
      return C(2) * C(L).pow(R(1, 2)) * three(R((L + 2) * (L - 1), 4)) * H(p, "HZ", R(L + 2, 2 * L));
    });
    add("witt1", [](const BoundParams& p) {
      long k = positive(p, "k");
      Rational g = qbar::pow(R(3, 2), static_cast<unsigned long>(k));
      LogProduct inner = C(k).pow(R(1, 2)) * H(p, "HF", R(k * k + 1)) * H(p, "HZ", R(6 * k + 5, 4 * k + 2));
      return three(R(12 * k * k * k * k * (k + 1)) * g) * inner.pow(R((k + 1) * (k + 2), 2) * g);
    });
    auto witt2 = [](const BoundParams& p) {
      long k = nonneg(p, "k");
      return C(2) * C(2 * k + 1).pow(R(1, 2)) * three(R((2 * k + 3) * k, 2)) *
             H(p, "HZ", R(2 * k + 3, 4 * k + 2));
    };
    add("witt2", witt2);
    add("anis_comp", witt2);
    add("even_dec", [](const BoundParams& p) {
      long k = positive(p, "k");
      Rational g = qbar::pow(R(3, 2), static_cast<unsigned long>(k));
      LogProduct inner = H(p, "HF", R(k * k)) * H(p, "HZ");
      return three(R(12 * k * k * k * k * k) * g) * inner.pow(R((k + 1) * (k + 2), 2) * g);
    });
    add("hyp1", [](const BoundParams& p) {
      long k = positive(p, "k");
      return three(R((k + 1) * (k + 1) * (k + 1))) * H(p, "HF", R(k, 2)) *
             H(p, "HZ", R((k + 1) * (k + 2), 2 * k * k));
    });
    add("siegel2", [](const BoundParams& p) {
      long L = positive(p, "L");
      return three(R((L - 1) * (L - 1) * (L + 2), 4)) * H(p, "HF", R(L * (L + 1), 2)) * H(p, "HZ", R(L));
    });
    add("ref_bound", [](const BoundParams& p) {
      long N = positive(p, "N");
      return C(N * N * N * (N + 2)) * H(p, "HF") * H(p, "Hx", R(2));
    });
    add("isom_bound", [](const BoundParams& p) {
      long L = positive(p, "L"), N = positive(p, "N");
      return three(R((L + 2) * (L - 1), 2)) * C(4 * L * N * N * N * (N + 2)) * H(p, "HF") *
             H(p, "HZ", R(L + 2, L));
    });
    add("cd_bound", [](const BoundParams& p) {
      long L = positive(p, "L"), N = positive(p, "N");
      LogProduct base = (C(2 * N * N) * three(R(L - 1, 2))).pow(R(L * L, 2));
      LogProduct inner = base * H(p, "HF", R(L, 3)) * H(p, "HZ", R(L, 2)) * H(p, "Hsigma");
      Integer five = 1;
      for (long i = 1; i < L; ++i) five *= 5;
      return inner.pow(Rational(five));
    });
    add("bezout", [](const BoundParams& p) { return C(2).pow(R(1, 2)) * H(p, "HW", R(2)) * H(p, "HF"); });
    add("matrix_pm", [](const BoundParams& p) { return C(2) * H(p, "HA"); });
    add("matrix_prod", [](const BoundParams& p) { return H(p, "HA") * H(p, "HB"); });
    add("sum_height", [](const BoundParams& p) { return H(p, "Ha") * product(p, "hx"); });
    add("hf_vs_curly", [](const BoundParams& p) { return C(2).pow(R(1, 2)) * H(p, "HF"); });
    add("wedge_prod", [](const BoundParams& p) { return product(p, "Hx"); });
    add("wedge_block", [](const BoundParams& p) { return H(p, "HX1") * H(p, "HX2"); });
    add("mult_bound", [](const BoundParams& p) {
      long J = nonneg(p, "J");
      return H(p, "HF", R(J)) * product(p, "Hx");
    });
    add("intersection", [](const BoundParams& p) { return H(p, "HU1") * H(p, "HU2"); });

    // intermediate steps of the constructions, checked only in trace mode
    add("q6", [](const BoundParams& p) { return C(72) * H(p, "HF", R(1, 2)) * H(p, "HZ", R(2)); }, true);
    add("ind_sub", [](const BoundParams& p) {
      long k = positive(p, "k");
      return three(R((2 * k - 1) * (k - 1))) * H(p, "HZ", R(k - 1, k));
    }, true);
    add("H_W", [](const BoundParams& p) {
      long k = positive(p, "k");
      return (three(R(k, 2)) * H(p, "HF")).pow(R(k - 1)) * H(p, "HU") * H(p, "HZ");
    }, true);
    add("hint3", [](const BoundParams& p) { return C(2).pow(R(1, 4)) * H(p, "HW") * H(p, "HF", R(1, 2)); }, true);
    add("Z1", [](const BoundParams& p) {
      long k = positive(p, "k");
      return three(R(2 * k * k)) * H(p, "HZ", R(2 * k, 2 * k + 1));
    }, true);
    add("W", [](const BoundParams& p) {
      long k = positive(p, "k");
      return three(R(k * (4 * k - 1))) * H(p, "HZ", R(2 * k, 2 * k + 1));
    }, true);
    add("o1", [](const BoundParams& p) {
      long k = positive(p, "k");
      return C(24) * C(2).pow(R(k - 1, 4)) * three(R(k * (k + 1) * (k + 1) * (k + 4), 4)) *
             H(p, "HF", R(k * k, 2)) * H(p, "HZ", R(k * k + k + 2, 2 * k + 1));
    }, true);
    add("odd1", [](const BoundParams& p) {
      long k = positive(p, "k");
      return three(R(k * (6 * k - 1))) * H(p, "HF", R(2 * k - 1)) * H(p, "HZ", R(4 * k, 2 * k + 1)) * H(p, "HU");
    }, true);
    add("zz1", [](const BoundParams& p) { return H(p, "H1") * H(p, "HZ") * H(p, "HF", R(2)); }, true);
    add("zz2", [](const BoundParams& p) { return H(p, "HW") * H(p, "HZ") * H(p, "HF"); }, true);
    add("cd6", [](const BoundParams& p) {
      long L = positive(p, "L"), N = positive(p, "N");
      return C(4 * L * N * N * N * (N + 2)) * three(R((L + 2) * (L - 1), 2)) * H(p, "HF") *
             H(p, "HZ", R(L + 2, L)) * H(p, "Hsigma", R(2));
    }, true);
    add("cd13", [](const BoundParams& p) {
      long L = positive(p, "L"), N = positive(p, "N");
      return C(16 * L * N * N * N * (N + 2)) * three(R((L + 2) * (L - 1), 2)) * H(p, "HF") *
             H(p, "HZ", R(L + 2, L)) * H(p, "Hsigma", R(2));
    }, true);
    add("cd13_1", [](const BoundParams& p) {
      long L = positive(p, "L"), N = positive(p, "N");
      Rational c = Rational(64 * L * L) * qbar::pow(R(N), 6) * qbar::pow(R(N + 2), 2);
      return C(c) * three(R((L + 2) * (L - 1))) * H(p, "HF", R(2)) * H(p, "HZ", R(2 * L + 4, L)) *
             H(p, "Hsigma", R(5));
    }, true);
    add("cd13_2", [](const BoundParams& p) {
      long L = positive(p, "L");
      return C(2) * C(L).pow(R(1, 2)) * three(R((L + 2) * (L - 1), 4)) * H(p, "HF") * H(p, "HZ", R(3 * L + 2, 2 * L));
    }, true);
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> bound_catalog() {
  std::vector<std::string> ids;
  for (const auto& [id, e] : catalog()) ids.push_back(id);
  return ids;
}

bool is_known_bound(const std::string& id) { return catalog().count(id) != 0; }

bool is_trace_bound(const std::string& id) {
  auto it = catalog().find(id);
  return it != catalog().end() && it->second.trace;
}

LogProduct bound_rhs(const std::string& id, const BoundParams& params) {
  auto it = catalog().find(id);
  if (it == catalog().end()) fail(ErrorCode::unknown_bound_id, "unknown bound '" + id + "'");
  return it->second.build(params);
}

Interval bound_rhs_log(const std::string& id, const BoundParams& params, unsigned bits) {
  return bound_rhs(id, params).log_enclosure(bits);
}

// ---------------------------------------------------------------- checks

BoundCertificate compare(const std::string& id, const LogProduct& lhs, const LogProduct& rhs,
                         const CheckOptions& opt) {
  BoundCertificate c;
  c.bound_id = id;
  bool tried_exact = false;
  for (unsigned bits = opt.bits_start; bits <= opt.bits_max; bits *= 2) {
    Interval l = lhs.log_enclosure(bits);
    Interval r = rhs.log_enclosure(bits);
    c.bits = bits;
    c.lhs_log_lo = l.lo_double();
    c.lhs_log_hi = l.hi_double();
    c.rhs_log_lo = r.lo_double();
    c.rhs_log_hi = r.hi_double();
    Interval el = exp(l);
    c.lhs_lo = el.lo_double();
    c.lhs_hi = el.hi_double();
    if (l.certainly_le(r)) {
      c.verdict = Verdict::verified;
      return c;
    }
    if (l.certainly_gt(r)) {
      c.verdict = Verdict::violated;
      return c;
    }
    if (!tried_exact && lhs.exact() && rhs.exact()) {
      tried_exact = true;
      if (auto e = exact_le(lhs, rhs)) {
        c.verdict = *e ? Verdict::verified : Verdict::violated;
        c.exact_decision = true;
        return c;
      }
    }
  }
  c.verdict = Verdict::inconclusive;
  return c;
}

BoundCertificate check(const std::string& id, const LogProduct& lhs, const BoundParams& params,
                       const CheckOptions& opt) {
  LogProduct rhs = bound_rhs(id, params);
  BoundCertificate c = compare(id, lhs, rhs, opt);
  c.int_params = params.ints;
  for (const auto& [k, h] : params.heights) c.height_params[k] = {h.lo(), h.hi()};
  for (const auto& [k, hs] : params.lists)
    for (const auto& h : hs) c.list_params[k].emplace_back(h.lo(), h.hi());
  c.trace = is_trace_bound(id);
  return c;
}

void CertificateLog::emit(const std::string& id, const LogProduct& lhs, const BoundParams& params,
                          const std::string& site, int level, std::vector<std::string> caveats) {
  if (is_trace_bound(id) && !trace_enabled) return;
  BoundCertificate c = check(id, lhs, params, options);
  c.site = site_prefix.empty() ? site : site_prefix + "/" + site;
  c.level = level;
  c.caveats = std::move(caveats);
  items.push_back(std::move(c));
}

}  // namespace qbar
