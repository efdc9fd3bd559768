#include "qbar/campaign.hpp"

#include "qbar/random.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

namespace qbar {

namespace {

const std::pair<Construction, const char*> kNames[] = {
    {Construction::isotropic, "isotropic"}, {Construction::maxiso, "maxiso"},
    {Construction::witt, "witt"},           {Construction::orthobasis, "orthobasis"},
    {Construction::cd, "cd"},               {Construction::suite, "suite"},
    {Construction::smallbasis, "smallbasis"}, {Construction::checks, "checks"},
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix restricted(const Matrix& f, const Subspace& z) {
  Matrix x = z.basis_columns();
  return x.transpose() * f * x;
}

struct Outcome {
  json output;
  std::string failure;  // exact check that did not hold
  std::vector<BoundCertificate> certificates;
  std::vector<std::string> notes;
};

bool spans(const Subspace& z, const std::vector<Vector>& xs) {
  if (xs.size() != z.dim()) return false;
  for (const auto& x : xs)
    if (!contains(z, x)) return false;
  return rref(xs, z.ambient()).rows.size() == z.dim();
}

Outcome construct(const InstanceSpec& spec, Construction c, const EngineOptions& opt) {
  Session s(opt);
  Outcome o;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok && o.failure.empty()) o.failure = what;
  };
  switch (c) {
    case Construction::isotropic: {
      QuadraticSpace q = spec.space();
      Vector x = small_zero_free(q.gram(), s);
      need(!is_zero_vector(x) && bilinear(q.gram(), x, x).is_zero(), "small zero is not a nonzero zero of F");
      o.output["zero"] = to_json(x);
      if (q.dim() >= 2 && q.regular()) {
        Vector y = isotropic_in_space(q, s);
        need(!is_zero_vector(y) && contains(q.space(), y) && evaluate(q, y).is_zero(),
             "isotropic vector is not a nonzero zero of F in Z");
        o.output["isotropic"] = to_json(y);
      }
      break;
    }
    case Construction::maxiso: {
      QuadraticSpace q = spec.space();
      MaxIsotropic m = max_isotropic(q, s);
      need(m.v.dim() == q.dim() / 2, "dim V differs from floor(L/2)");
      need(contains(q.space(), m.v), "V is not inside Z");
      need(totally_isotropic(q, m.v), "V is not totally isotropic");
      o.output = to_json(m);
      break;
    }
    case Construction::witt: {
      QuadraticSpace q = spec.space();
      WittDecomposition w = witt_decompose(q, s);
      need(check_witt(q, w), "Witt decomposition failed the exact checks");
      o.output = to_json(w);
      break;
    }
    case Construction::orthobasis: {
      QuadraticSpace q = spec.space();
      auto xs = orthogonal_basis(q, s);
      need(pairwise_orthogonal(q, xs), "basis is not pairwise orthogonal");
      need(spans(q.space(), xs), "basis does not span Z");
      json a = json::array();
      for (const auto& x : xs) a.push_back(to_json(x));
      o.output["basis"] = a;
      break;
    }
    case Construction::cd: {
      QuadraticSpace q = spec.space();
      Matrix a = spec.isometry ? *spec.isometry : Matrix::identity(q.ambient(), q.context());
      Isometry sigma(q, a);
      auto rs = cartan_dieudonne(q, sigma, s);
      Matrix prod = Matrix::identity(q.ambient(), q.context());
      for (const auto& r : rs) prod = prod * r.iso.matrix();
      need(agree_on(sigma, prod), "reflections do not recompose sigma on Z");
      need(rs.size() <= (q.dim() ? 2 * q.dim() - 1 : 0), "more than 2L - 1 reflections");
      if (agree_on(sigma, Matrix::identity(q.ambient(), q.context()))) need(rs.empty(), "identity gave reflections");
      o.output["reflections"] = to_json(rs);
      o.output["length"] = rs.size();
      break;
    }
    case Construction::suite: {
      SuiteInstance si;
      si.n = spec.n;
      si.seed = spec.seed.value_or(opt.seed);
      si.context = spec.tower;
      si.form = spec.form;
      o.certificates = inequality_suite(si, opt);
      o.output = json::object();
      break;
    }
    case Construction::smallbasis: {
      Subspace z = spec.z();
      auto sb = s.small_basis(z);
      need(spans(z, sb->vectors), "small basis does not span Z");
      json a = json::array();
      for (const auto& x : sb->vectors) a.push_back(to_json(x));
      o.output["basis"] = a;
      break;
    }
    case Construction::checks: {
      for (const auto& r : spec.checks) {
        BoundCertificate cert = check(r.bound_id, r.lhs, r.params, opt.checks);
        cert.site = "input";
        o.certificates.push_back(std::move(cert));
      }
      o.output = json::object();
      break;
    }
  }
  for (auto& cert : s.certificates.items) o.certificates.push_back(std::move(cert));
  o.notes = std::move(s.notes);
  return o;
}

}  // namespace

std::string_view construction_name(Construction c) {
  for (const auto& [k, n] : kNames)
    if (k == c) return n;
  return "?";
}

Construction parse_construction(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (name == n) return k;
  fail(ErrorCode::schema_error, "unknown construction '" + std::string(name) + "'");
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t index) { return splitmix(splitmix(seed) + index); }

Matrix random_isometry(const QuadraticSpace& q, std::size_t count, std::mt19937_64& rng) {
  const TowerContext ctx = q.context();
  Matrix a = Matrix::identity(q.ambient(), ctx);
  const auto& basis = q.space().basis();
  for (std::size_t r = 0; r < count; ++r)
    for (int attempt = 0; attempt < 64; ++attempt) {
      Vector x(q.ambient(), TowerElement(ctx, Rational(0)));
      for (const auto& b : basis) x = add(x, scale(TowerElement(ctx, Rational(random::integer(rng, -2, 2))), b));
      if (is_zero_vector(x) || evaluate(q, x).is_zero()) continue;
      a = a * reflection(q, x).iso.matrix();
      break;
    }
  return a;
}

InstanceSpec random_instance(const InstanceConfig& cfg, std::uint64_t seed) {
  if (cfg.n_min < 1 || cfg.n_min > cfg.n_max) fail(ErrorCode::schema_error, "need 1 <= n_min <= n_max");
  if (cfg.l_min == 0 || (cfg.l_max && *cfg.l_max == 0))
    fail(ErrorCode::dimension_too_small, "instances need L >= 1");
  std::mt19937_64 rng(seed);
  InstanceSpec spec;
  spec.seed = seed;
  spec.tower = TowerContext::rational(cfg.degree_cap);
  const TowerContext& ctx = spec.tower;
  spec.n = random::integer(rng, cfg.n_min, cfg.n_max);
  const std::size_t hi = std::min(cfg.l_max.value_or(spec.n), spec.n);
  const std::size_t lo = std::min(cfg.l_min, hi);
  const std::size_t l = random::integer(rng, lo, hi);
  Subspace z = l == spec.n ? Subspace::full(spec.n, ctx) : random::subspace(rng, spec.n, l, 3, ctx);
  if (l < spec.n) spec.subspace = z;
  const bool singular = cfg.singular_rate > 0 && std::uniform_real_distribution<double>(0, 1)(rng) < cfg.singular_rate;
  for (;;) {
    Matrix f = random::symmetric(rng, spec.n, cfg.bound, ctx);
    if (singular) {
      // F <- P^T F P with P = I - z w^T / (w . z) kills a random z in Z
      Vector zv(spec.n, TowerElement(ctx, Rational(0)));
      for (const auto& b : z.basis()) zv = add(zv, scale(TowerElement(ctx, Rational(random::integer(rng, -2, 2))), b));
      if (is_zero_vector(zv)) continue;
      Vector w = random::integer_vector(rng, spec.n, 3, ctx);
      TowerElement wz = dot(w, zv);
      if (wz.is_zero()) continue;
      Matrix p = Matrix::identity(spec.n, ctx);
      TowerElement inv = invert(wz);
      for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < spec.n; ++j) p(i, j) -= zv[i] * w[j] * inv;
      spec.form = p.transpose() * f * p;
      break;
    }
    if (!determinant(restricted(f, z)).is_zero()) {
      spec.form = std::move(f);
      break;
    }
  }
  if (cfg.isometry) {
    QuadraticSpace q = spec.space();
    if (q.regular()) {
      const std::size_t count = random::integer(rng, 1, 2 * l - 1);
      spec.isometry = random_isometry(q, count, rng);
    }
  }
  return spec;
}

InstanceResult run_instance(const InstanceSpec& spec, Construction c, const EngineOptions& opt) {
  InstanceResult r;
  r.seed = opt.seed;
  r.n = spec.n;
  r.l = spec.subspace ? spec.subspace->dim() : spec.n;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = with_square_retry(0, [&] { return construct(spec, c, opt); });
    r.output = std::move(o.output);
    r.certificates = std::move(o.certificates);
    r.notes = std::move(o.notes);
    if (!o.failure.empty()) {
      r.status = "check-failed";
      r.error = o.failure;
    }
  } catch (const Error& e) {
    r.status = e.code() == ErrorCode::degree_cap_exceeded ? "degree-cap" : "failed";
    r.error = e.what();
  } catch (const SquareDetected& e) {
    r.status = "failed";
    r.error = std::string("square retries exhausted: ") + e.what();
  } catch (const std::exception& e) {
    r.status = "failed";
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Tally CampaignReport::totals() const {
  Tally t;
  for (const auto& [id, x] : tallies) {
    t.verified += x.verified;
    t.violated += x.violated;
    t.inconclusive += x.inconclusive;
  }
  return t;
}

int CampaignReport::exit_code() const {
  Tally t = totals();
  if (t.violated || check_failures) return 2;
  if (t.inconclusive || failed || degree_cap_hits) return 3;
  return 0;
}

void tally(CampaignReport& report) {
  report.tallies.clear();
  report.failed = report.degree_cap_hits = report.check_failures = report.small_basis_unverified = 0;
  for (const auto& r : report.instances) {
    if (r.status == "failed") ++report.failed;
    if (r.status == "degree-cap") ++report.degree_cap_hits;
    if (r.status == "check-failed") ++report.check_failures;
    bool sb = false;
    for (const auto& c : r.certificates) {
      Tally& t = report.tallies[c.bound_id];
      switch (c.verdict) {
        case Verdict::verified: ++t.verified; break;
        case Verdict::violated: ++t.violated; break;
        case Verdict::inconclusive: ++t.inconclusive; break;
      }
      const double s = c.slack();
      if (std::isfinite(s)) {
        if (t.slack_count == 0 || s < t.slack_min) t.slack_min = s;
        if (t.slack_count == 0 || s > t.slack_max) t.slack_max = s;
        t.slack_sum += s;
        ++t.slack_count;
      }
      for (const auto& cv : c.caveats) sb = sb || cv == "small-basis-unverified";
    }
    if (sb) ++report.small_basis_unverified;
  }
}

CampaignReport run_campaign(const CampaignConfig& cfg) {
  CampaignReport report;
  report.config = cfg;
  if (cfg.construction == Construction::checks) fail(ErrorCode::schema_error, "checks need an input file");
  // validate once up front so a bad config is an input error, not n failures
  if (cfg.count) (void)random_instance(cfg.instances, instance_seed(cfg.seed, 0));
  report.instances.resize(cfg.count);
  auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cfg.count;) {
      const std::uint64_t seed = instance_seed(cfg.seed, i);
      EngineOptions opt = cfg.engine;
      opt.seed = seed;
      InstanceResult r;
      try {
        InstanceConfig ic = cfg.instances;
        ic.isometry = ic.isometry || cfg.construction == Construction::cd;
        if (cfg.construction == Construction::suite) ic.n_min = std::max<std::size_t>(ic.n_min, 2);
        InstanceSpec spec = random_instance(ic, seed);
        r = run_instance(spec, cfg.construction, opt);
      } catch (const std::exception& e) {
        r.status = "failed";
        r.error = e.what();
      }
      r.index = i;
      r.seed = seed;
      report.instances[i] = std::move(r);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, cfg.count ? cfg.count : 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  tally(report);
  return report;
}

CampaignReport single_report(const CampaignConfig& cfg, InstanceResult r) {
  CampaignReport report;
  report.config = cfg;
  report.config.count = 1;
  report.seconds = r.seconds;
  report.instances.push_back(std::move(r));
  tally(report);
  return report;
}

json config_json(const CampaignConfig& c) {
  const InstanceConfig& i = c.instances;
  json j{{"construction", std::string(construction_name(c.construction))},
         {"count", c.count},
         {"seed", c.seed},
         {"n_min", i.n_min},
         {"n_max", i.n_max},
         {"l_min", i.l_min},
         {"bound", i.bound},
         {"singular_rate", i.singular_rate},
         {"degree_cap", i.degree_cap},
         {"trials", c.engine.heights.trials},
         {"prec_start", c.engine.checks.bits_start},
         {"prec_max", c.engine.checks.bits_max},
         {"trace_bounds", c.engine.trace}};
  j["l_max"] = i.l_max ? json(*i.l_max) : json(nullptr);
  return j;
}

json report_json(const CampaignReport& r, bool mask_timing) {
  json inst = json::array();
  for (const auto& x : r.instances) {
    json certs = json::array();
    for (const auto& c : x.certificates) certs.push_back(to_json(c));
    json j{{"index", x.index}, {"seed", x.seed}, {"N", x.n}, {"L", x.l}, {"status", x.status}};
    if (!x.error.empty()) j["error"] = x.error;
    j["output"] = x.output;
    j["notes"] = x.notes;
    j["certificates"] = certs;
    inst.push_back(j);
  }
  json tallies = json::object();
  for (const auto& [id, t] : r.tallies) {
    json s = json(nullptr);
    if (t.slack_count)
      s = {{"min", t.slack_min}, {"max", t.slack_max}, {"mean", t.slack_sum / double(t.slack_count)}};
    tallies[id] = {{"verified", t.verified}, {"violated", t.violated}, {"inconclusive", t.inconclusive}, {"slack_log", s}};
  }
  Tally t = r.totals();
  json out{{"config", config_json(r.config)},
           {"seed", r.config.seed},
           {"instances", inst},
           {"tallies", tallies},
           {"totals", {{"verified", t.verified}, {"violated", t.violated}, {"inconclusive", t.inconclusive}}},
           {"failed", r.failed},
           {"degree_cap_hits", r.degree_cap_hits},
           {"check_failures", r.check_failures},
           {"small_basis_unverified", r.small_basis_unverified},
           {"exit_code", r.exit_code()}};
  if (mask_timing) {
    out["timing"] = nullptr;
  } else {
    json per = json::array();
    for (const auto& x : r.instances) per.push_back(x.seconds);
    out["timing"] = {{"total_seconds", r.seconds}, {"instance_seconds", per}};
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::string report_csv(const CampaignReport& r) {
  std::string out = "instance_id,bound_id,lhs_hi,rhs_lo,slack,verdict,caveats\n";
  for (const auto& x : r.instances)
    for (const auto& c : x.certificates) {
      std::string cav;
      for (const auto& s : c.caveats) cav += (cav.empty() ? "" : ";") + s;
      out += std::to_string(x.index) + "," + csv_field(c.bound_id) + "," + num(c.lhs_hi) + "," + num(c.rhs_log_lo) +
             "," + num(c.slack()) + "," + std::string(verdict_name(c.verdict)) + "," + csv_field(cav) + "\n";
    }
  return out;
}

std::string report_summary(const CampaignReport& r) {
  std::ostringstream os;
  Tally t = r.totals();
  os << construction_name(r.config.construction) << ": " << r.instances.size() << " instance(s), seed "
     << r.config.seed << "\n";
  os << "certificates: " << t.verified << " verified, " << t.violated << " violated, " << t.inconclusive
     << " inconclusive\n";
  for (const auto& [id, x] : r.tallies)
    os << "  " << id << ": " << x.verified << "/" << x.violated << "/" << x.inconclusive << "\n";
  os << "failed " << r.failed << ", degree-cap " << r.degree_cap_hits << ", check failures " << r.check_failures
     << ", small-basis unverified " << r.small_basis_unverified << "\n";
  for (const auto& x : r.instances)
    if (x.status != "ok") os << "  instance " << x.index << " (" << x.status << "): " << x.error << "\n";
  return os.str();
}

}  // namespace qbar
