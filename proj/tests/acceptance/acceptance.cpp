// Acceptance gate: one PASS/FAIL line per criterion, exit status = number of failures.
#include "qbar/campaign.hpp"
#include "qbar/isometry.hpp"
#include "qbar/random.hpp"
#include "qbar/suite.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

using namespace qbar;

namespace {

// pinned tolerances and limits
constexpr double kProductFormulaTol = 1e-25;
constexpr double kRelativeWidth = 1e-20;
constexpr double kCriterion1Seconds = 30;
constexpr double kCriterion2Seconds = 60;
constexpr double kIsotropicInstanceSeconds = 2;
constexpr double kMaxisoInstanceSeconds = 10;
constexpr double kWittInstanceSeconds = 15;
constexpr double kCdInstanceSeconds = 10;
constexpr std::uint64_t kSeed = 20240607;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TowerContext quadratic(long d) {
  return TowerContext::rational().with_generator({Rational(d)});
}

TowerContext tower2(long a, long b) { return quadratic(a).with_generator({Rational(b), Rational(0)}); }

Matrix rational_matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
  auto q = TowerContext::rational();
  std::vector<Vector> rs;
  for (auto r : rows) {
    Vector v;
    for (const char* x : r) v.emplace_back(q, parse_rational(x));
    rs.push_back(v);
  }
  return Matrix::from_rows(rs);
}

CampaignReport campaign(Construction c, std::size_t count, std::function<void(CampaignConfig&)> tweak = {}) {
  CampaignConfig cfg;
  cfg.construction = c;
  cfg.count = count;
  cfg.seed = kSeed;
  cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
  if (tweak) tweak(cfg);
  return run_campaign(cfg);
}

struct IdCount {
  std::size_t total = 0, verified = 0;
};

IdCount count_ids(const CampaignReport& r, std::initializer_list<const char*> ids) {
  IdCount out;
  for (const auto& inst : r.instances)
    for (const auto& c : inst.certificates)
      for (const char* id : ids)
        if (c.bound_id == id && !c.trace) {
          ++out.total;
          if (c.verdict == Verdict::verified) ++out.verified;
        }
  return out;
}

void require_clean(Outcome& o, const CampaignReport& r) {
  std::size_t bad = 0;
  for (const auto& inst : r.instances)
    if (inst.status != "ok") {
      if (bad++ == 0) o.detail << "[first bad instance " << inst.index << ": " << inst.status << " " << inst.error << "] ";
    }
  o.require(bad == 0, std::to_string(bad) + " instances not ok");
}

void require_all(Outcome& o, const CampaignReport& r, std::initializer_list<const char*> ids, const std::string& label,
                 std::size_t min_total = 1) {
  IdCount c = count_ids(r, ids);
  o.detail << label << " " << c.verified << "/" << c.total << " ";
  o.require(c.total >= min_total, label + " certificates missing");
  o.require(c.verified == c.total, label + " not all verified");
}

double max_seconds(const CampaignReport& r) {
  double m = 0;
  for (const auto& inst : r.instances) m = std::max(m, inst.seconds);
  return m;
}

void require_time(Outcome& o, const CampaignReport& r, double limit) {
  double m = max_seconds(r);
  char buf[64];
  std::snprintf(buf, sizeof buf, "max %.2fs/instance ", m);
  o.detail << buf;
  o.require(m < limit, "instance time limit exceeded");
}

// ------------------------------------------------------------------ 1
Outcome finite_part_oracle() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed);
  std::size_t mismatches = 0;
  auto q = TowerContext::rational();
  for (int i = 0; i < 500; ++i) {
    std::size_t n = random::integer(rng, 1, 6);
    Vector x = random::vector(rng, n, 1000, q);
    if (!(finite_part_gauss(x) == finite_part_rational(x))) ++mismatches;
  }
  const long ds[] = {-1, 2, 3, 5, -7};
  for (int i = 0; i < 200; ++i) {
    TowerContext k = quadratic(ds[i % 5]);
    std::size_t n = random::integer(rng, 1, 5);
    Vector x = random::vector(rng, n, 30, k);
    TowerElement a = random::element(rng, k, 12);
    if (!a.is_zero()) x = scale(a, x);
    if (!(finite_part_gauss(x) == finite_part_quadratic(x))) ++mismatches;
  }
  double t = since(t0);
  o.detail << "700 vectors, " << mismatches << " mismatches, " << t << "s";
  o.require(mismatches == 0, "finite part mismatch");
  o.require(t < kCriterion1Seconds, "time limit");
  return o;
}

// ------------------------------------------------------------------ 2
Outcome height_invariants() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed + 2);
  std::vector<TowerContext> ks = {TowerContext::rational(), quadratic(2), quadratic(-1), quadratic(5), quadratic(-7),
                                  tower2(2, 3), tower2(-1, 5)};
  double worst_pf = 0;
  std::size_t proj_bad = 0, base_bad = 0, dual_bad = 0;
  for (int i = 0; i < 140; ++i) {
    const TowerContext& k = ks[i % ks.size()];
    TowerElement a = random::element(rng, k, 50);
    if (a.is_zero()) continue;
    // a single coordinate has height one: the product formula
    HeightValue h = height_vector(Vector{a});
    worst_pf = std::max({worst_pf, std::fabs(h.log_enclosure().lo_double()), std::fabs(h.log_enclosure().hi_double())});

    Vector x = random::vector(rng, 3, 20, k);
    HeightValue h1 = height_vector(x), h2 = height_vector(scale(a, x));
    bool overlap = h1.log_enclosure().lo_double() <= h2.log_enclosure().hi_double() &&
                   h2.log_enclosure().lo_double() <= h1.log_enclosure().hi_double();
    bool narrow = h1.log_enclosure().width_double() < kRelativeWidth && h2.log_enclosure().width_double() < kRelativeWidth;
    if (!overlap || !narrow || (h1.exact() && h2.exact() && compare_heights(h1, h2) != 0)) ++proj_bad;

    std::vector<Rational> sq(k.degree());
    sq[0] = 11;
    TowerContext big = k.with_generator(sq);
    HeightValue h3 = height_vector(lift(x, big));
    bool same_fp = h1.finite_part() == h3.finite_part();
    bool overlap3 = h1.log_enclosure().lo_double() <= h3.log_enclosure().hi_double() &&
                    h3.log_enclosure().lo_double() <= h1.log_enclosure().hi_double();
    if (!same_fp || !overlap3 || h3.log_enclosure().width_double() >= kRelativeWidth) ++base_bad;
  }
  auto q = TowerContext::rational();
  for (int i = 0; i < 100; ++i) {
    std::size_t n = random::integer(rng, 2, 6), r = random::integer(rng, 1, long(n) - 1);
    auto rows = random::independent(rng, n, r, 9, q);
    Subspace row_space(n, rows, q);
    Subspace ker = kernel(Matrix::from_rows(rows));
    if (compare_heights(height_subspace(row_space), height_subspace(ker)) != 0) ++dual_bad;
  }
  double t = since(t0);
  o.detail << "product formula max |log H| " << worst_pf << ", projective bad " << proj_bad << ", base change bad "
           << base_bad << ", duality bad " << dual_bad << "/100, " << t << "s";
  o.require(worst_pf < kProductFormulaTol, "product formula");
  o.require(proj_bad == 0, "projective invariance");
  o.require(base_bad == 0, "base change invariance");
  o.require(dual_bad == 0, "duality");
  o.require(t < kCriterion2Seconds, "time limit");
  return o;
}

// ------------------------------------------------------------------ 3
Outcome inequality_suites() {
  Outcome o;
  CampaignReport r = campaign(Construction::suite, 200);
  require_clean(o, r);
  Tally t = r.totals();
  o.detail << "verified " << t.verified << " violated " << t.violated << " inconclusive " << t.inconclusive << "; ";
  o.require(t.violated == 0 && t.inconclusive == 0, "suite verdicts");
  for (const char* id : {"wedge_prod", "wedge_block", "mult_bound", "intersection", "matrix_pm", "matrix_prod",
                         "sum_height", "hf_vs_curly"}) {
    IdCount c = count_ids(r, {id});
    o.require(c.total >= 200, std::string(id) + " ran on fewer than 200 instances");
  }
  // x1 x2: gram height sqrt 2, coefficient height 1
  Matrix f = rational_matrix({{"0", "1/2"}, {"1/2", "0"}});
  SuiteInstance si;
  si.form = f;
  auto cs = inequality_suite(si);
  bool hf = false;
  for (const auto& c : cs)
    if (c.bound_id == "hf_vs_curly") hf = c.verdict == Verdict::verified;
  o.require(hf, "hf_vs_curly on x1x2");
  LogProduct gram = LogProduct::of(height_gram(f));
  LogProduct poly = LogProduct::constant(2).pow(Rational(1, 2)) * LogProduct::of(height_form_poly(f));
  auto le = exact_le(gram, poly), ge = exact_le(poly, gram);
  bool equal = le && ge && *le && *ge;
  o.detail << "x1x2 equality " << (equal ? "exact" : "not exact");
  o.require(equal, "x1x2 equality case");
  return o;
}

// ------------------------------------------------------------------ 4
Outcome small_zeros() {
  Outcome o;
  CampaignReport r = campaign(Construction::isotropic, 100, [](CampaignConfig& c) { c.instances.n_max = 6; });
  require_clean(o, r);
  require_all(o, r, {"qz_bound"}, "qz_bound", 100);
  require_all(o, r, {"zero_eq"}, "zero_eq", 1);
  require_time(o, r, kIsotropicInstanceSeconds);
  return o;
}

// ------------------------------------------------------------------ 5
Outcome maximal_isotropic() {
  Outcome o;
  CampaignReport r = campaign(Construction::maxiso, 100, [](CampaignConfig& c) {
    c.instances.n_max = 6;
    c.instances.l_min = 2;
    c.instances.l_max = 5;
  });
  require_clean(o, r);
  require_all(o, r, {"vaaler_even", "vaaler_odd"}, "vaaler", 100);
  require_all(o, r, {"bezout"}, "bezout", 1);
  IdCount s3 = count_ids(r, {"siegel3"});
  o.detail << "(siegel3 " << s3.verified << "/" << s3.total << ") ";
  require_time(o, r, kMaxisoInstanceSeconds);

  Matrix f = rational_matrix({{"0", "1/2", "0", "0"}, {"1/2", "0", "0", "0"}, {"0", "0", "0", "1/2"}, {"0", "0", "1/2", "0"}});
  Session s;
  MaxIsotropic m = max_isotropic(QuadraticSpace::full(f), s);
  auto q = TowerContext::rational();
  Subspace want(4, {unit_vector(4, 0, q), unit_vector(4, 2, q)}, q);
  HeightValue hv = height_subspace(m.v);
  bool one = hv.exact() && compare_heights(hv, HeightValue()) == 0;
  o.require(m.v == want && one, "x1x2+x3x4 trace");
  o.detail << "x1x2+x3x4 V height " << (one ? "1 exactly" : "not 1");
  return o;
}

// ------------------------------------------------------------------ 6
Outcome witt() {
  Outcome o;
  CampaignReport r = campaign(Construction::witt, 50, [](CampaignConfig& c) {
    c.instances.n_max = 6;
    c.instances.singular_rate = 0.4;
  });
  require_clean(o, r);
  std::size_t singular = 0;
  for (std::size_t i = 0; i < r.instances.size(); ++i)
    if (!random_instance(r.config.instances, instance_seed(r.config.seed, i)).space().regular()) ++singular;
  o.detail << singular << " singular instances, ";
  o.require(singular > 0, "no singular instances drawn");
  require_all(o, r, {"witt1"}, "witt1", 1);
  require_all(o, r, {"witt2"}, "witt2", 1);
  require_time(o, r, kWittInstanceSeconds);
  return o;
}

// ------------------------------------------------------------------ 7
Outcome orthobasis() {
  Outcome o;
  CampaignReport r = campaign(Construction::orthobasis, 100, [](CampaignConfig& c) { c.instances.n_max = 6; });
  require_clean(o, r);
  require_all(o, r, {"siegel2"}, "siegel2", 100);
  return o;
}

// ------------------------------------------------------------------ 8
Outcome cartan_dieudonne() {
  Outcome o;
  CampaignReport r = campaign(Construction::cd, 100, [](CampaignConfig& c) {
    c.instances.n_max = 5;
    c.instances.isometry = true;
  });
  require_clean(o, r);
  IdCount c = count_ids(r, {"cd_bound"});
  std::size_t flagged = 0;
  for (const auto& inst : r.instances)
    for (const auto& cert : inst.certificates)
      if (cert.bound_id == "cd_bound" &&
          std::find(cert.caveats.begin(), cert.caveats.end(), "surrogate-isometry-height") != cert.caveats.end())
        ++flagged;
  o.detail << "cd_bound " << c.verified << "/" << c.total << " (" << flagged << " flagged) ";
  o.require(c.total > 0 && c.verified == c.total, "cd_bound not all verified");
  o.require(flagged == c.total, "cd_bound missing the surrogate caveat");
  require_time(o, r, kCdInstanceSeconds);

  QuadraticSpace q = QuadraticSpace::full(rational_matrix({{"1", "0", "0"}, {"0", "2", "0"}, {"0", "0", "-3"}}));
  Session s;
  o.require(qbar::cartan_dieudonne(q, Isometry::identity(q), s).empty(), "identity gave reflections");
  return o;
}

// ------------------------------------------------------------------ 9
Outcome small_basis_contract() {
  Outcome o;
  CampaignReport r = campaign(Construction::smallbasis, 500, [](CampaignConfig& c) { c.instances.n_max = 8; });
  require_clean(o, r);
  IdCount c = count_ids(r, {"siegel3"});
  o.detail << "siegel3 " << c.verified << "/" << c.total << " ";
  o.require(c.total >= 500, "siegel3 certificates missing");
  o.require(c.verified == c.total, std::to_string(c.total - c.verified) + " siegel3 failures");
  return o;
}

// ------------------------------------------------------------------ 10
int run(const std::string& args) {
  std::string cmd = std::string(QBAR_CLI) + " " + args + " 2>/dev/null";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  fs::path dir = QBAR_SCRATCH;
  fs::create_directories(dir);
  const std::string base = "verify --construction maxiso --count 30 --seed 77 --n-max 5 --mask-timing";
  int e1 = run(base + " --jobs 1 --out " + (dir / "a.json").string());
  int e2 = run(base + " --jobs 4 --out " + (dir / "b.json").string());
  int e3 = run(base + " --jobs 4 --out " + (dir / "c.json").string());
  std::string a = slurp(dir / "a.json"), b = slurp(dir / "b.json"), c = slurp(dir / "c.json");
  o.require(!a.empty() && a == b && b == c, "reports differ");
  o.require(e1 == e2 && e2 == e3, "exit codes differ");
  int c1 = run("verify --report csv --construction witt --count 10 --seed 5 --out " + (dir / "a.csv").string());
  int c2 = run("verify --report csv --construction witt --count 10 --seed 5 --jobs 3 --out " + (dir / "b.csv").string());
  o.require(c1 == c2 && slurp(dir / "a.csv") == slurp(dir / "b.csv"), "csv reports differ");

  const fs::path fx = QBAR_FIXTURES;
  int ok = run("verify --input " + (fx / "verified.json").string() + " --out " + (dir / "v.json").string());
  int violated = run("verify --input " + (fx / "violated.json").string() + " --out " + (dir / "v.json").string());
  int inconclusive = run("verify --input " + (fx / "inconclusive.json").string() + " --out " + (dir / "v.json").string());
  int bad = run("verify --input " + (fx / "bad_schema.json").string() + " --out " + (dir / "v.json").string());
  o.detail << "reports " << (a == b && b == c ? "identical" : "differ") << ", exit codes verified=" << ok
           << " violated=" << violated << " inconclusive=" << inconclusive << " input-error=" << bad;
  o.require(ok == 0, "verified fixture exit code");
  o.require(violated == 2, "violated fixture exit code");
  o.require(inconclusive == 3, "inconclusive fixture exit code");
  o.require(bad == 4, "input error exit code");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"finite-part oracle equivalence", finite_part_oracle},
      {"height engine invariants", height_invariants},
      {"stand-alone inequality suites", inequality_suites},
      {"small zeros", small_zeros},
      {"maximal totally isotropic subspaces", maximal_isotropic},
      {"Witt decomposition", witt},
      {"orthogonal bases", orthobasis},
      {"Cartan-Dieudonne factorization", cartan_dieudonne},
      {"small-basis contract", small_basis_contract},
      {"determinism and exit codes", determinism},
  };
  int failures = 0, i = 0;
  for (const auto& c : criteria) {
    ++i;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", since(t0));
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << o.detail.str()
              << "] " << buf << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (failures ? "acceptance: FAIL (" + std::to_string(failures) + " criteria)" : std::string("acceptance: PASS"))
            << std::endl;
  return failures;
}
