#include "qbar/campaign.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qbar;

constexpr int kInputError = 4;

struct Shared {
  std::string input, out, report = "json";
  std::uint64_t seed = 1;
  unsigned trials = 8, prec_start = 128, prec_max = 4096, degree_cap = 64;
  bool trace = false, mask_timing = false;
  std::size_t count = 1;
  unsigned jobs = 1;
  std::size_t n_min = 2, n_max = 6, l_min = 1, l_max = 0;
  long bound = 10;
  double singular_rate = 0;
  std::string construction;
};

void add_shared(CLI::App* app, Shared& s, bool campaign) {
  app->add_option("--input", s.input, "instance JSON file")->check(CLI::ExistingFile);
  app->add_option("--seed", s.seed, "random seed");
  app->add_option("--trials", s.trials, "extra Monte Carlo trials for finite parts");
  app->add_option("--prec-start", s.prec_start, "initial interval precision (bits)");
  app->add_option("--prec-max", s.prec_max, "precision cap (bits)");
  app->add_option("--degree-cap", s.degree_cap, "largest tower degree");
  app->add_flag("--trace-bounds", s.trace, "also check proof-internal inequalities");
  app->add_option("--report", s.report, "report format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", s.out, "report path (stdout when omitted)");
  if (!campaign) return;
  app->add_option("--count", s.count, "random instances when no --input is given");
  app->add_option("--jobs", s.jobs, "worker threads");
  app->add_option("--n-min", s.n_min);
  app->add_option("--n-max", s.n_max);
  app->add_option("--l-min", s.l_min);
  app->add_option("--l-max", s.l_max, "0 means N");
  app->add_option("--bound", s.bound, "numerator/denominator bound of random Gram entries");
  app->add_option("--singular-rate", s.singular_rate, "share of random instances with a radical");
  app->add_flag("--mask-timing", s.mask_timing, "write the timing block as null");
}

EngineOptions engine(const Shared& s) {
  EngineOptions o;
  o.heights.trials = s.trials;
  o.heights.bits = s.prec_start;
  o.heights.max_bits = s.prec_max;
  o.checks.bits_start = s.prec_start;
  o.checks.bits_max = s.prec_max;
  o.trace = s.trace;
  o.seed = s.seed;
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::schema_error, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const Shared& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(s.out, std::ios::binary);
  if (!f) fail(ErrorCode::schema_error, "cannot write " + s.out);
  f << text;
}

int run_construction(const Shared& s, Construction c) {
  CampaignConfig cfg;
  cfg.construction = c;
  cfg.seed = s.seed;
  cfg.count = s.count;
  cfg.jobs = s.jobs;
  cfg.engine = engine(s);
  cfg.instances.n_min = s.n_min;
  cfg.instances.n_max = s.n_max;
  cfg.instances.l_min = s.l_min;
  if (s.l_max) cfg.instances.l_max = s.l_max;
  cfg.instances.bound = s.bound;
  cfg.instances.singular_rate = s.singular_rate;
  cfg.instances.degree_cap = s.degree_cap;

  CampaignReport rep;
  if (!s.input.empty()) {
    InstanceSpec spec = parse_instance(slurp(s.input), s.degree_cap);
    if (c != Construction::checks && c != Construction::suite && c != Construction::smallbasis && !spec.form)
      fail(ErrorCode::schema_error, "/form: this construction needs a form");
    if (spec.seed) cfg.seed = cfg.engine.seed = *spec.seed;
    rep = single_report(cfg, run_instance(spec, c, cfg.engine));
  } else {
    rep = run_campaign(cfg);
  }
  if (s.report == "csv")
    emit(s, report_csv(rep));
  else
    emit(s, report_json(rep, s.mask_timing).dump(2) + "\n");
  std::cerr << report_summary(rep);
  return rep.exit_code();
}

json height_block(const HeightValue& h) {
  const FinitePart& fp = h.finite_part();
  json j = to_json(h);
  j["finite_part"] = fp.degree == 1 || fp.power == 1 ? fp.power.get_str() : fp.power.get_str() + "^(1/" + std::to_string(fp.degree) + ")";
  return j;
}

int run_height(const Shared& s) {
  if (s.input.empty()) fail(ErrorCode::schema_error, "height needs --input");
  InstanceSpec spec = parse_instance(slurp(s.input), s.degree_cap);
  HeightOptions opt = engine(s).heights;
  json out = json::object();
  if (spec.vector) {
    out["H"] = height_block(height_vector(*spec.vector, opt));
    out["h"] = height_block(height_inhom(*spec.vector, opt));
  }
  if (spec.form) {
    out["gram_height"] = height_block(height_gram(*spec.form, opt));
    out["form_height"] = height_block(height_form_poly(*spec.form, opt));
  }
  if (spec.subspace) out["subspace_height"] = height_block(height_subspace(*spec.subspace, opt));
  if (out.empty()) fail(ErrorCode::schema_error, "/: nothing to measure (vector, form or subspace)");
  emit(s, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heights and small-height constructions for quadratic spaces over the algebraic numbers"};
  app.require_subcommand(1);
  Shared s;
  auto* height = app.add_subcommand("height", "heights of the vector, form and subspace of an instance");
  add_shared(height, s, false);
  std::vector<std::pair<CLI::App*, Construction>> subs;
  const std::pair<const char*, Construction> cons[] = {
      {"isotropic", Construction::isotropic}, {"maxiso", Construction::maxiso},
      {"witt", Construction::witt},           {"orthobasis", Construction::orthobasis},
      {"cd", Construction::cd}};
  for (const auto& [name, c] : cons) {
    auto* sub = app.add_subcommand(name, std::string(name) + " on --input or on --count random instances");
    add_shared(sub, s, true);
    subs.emplace_back(sub, c);
  }
  auto* verify = app.add_subcommand("verify", "certificate checks from --input, or a campaign");
  add_shared(verify, s, true);
  verify->add_option("--construction", s.construction,
                     "isotropic|maxiso|witt|orthobasis|cd|suite|smallbasis|checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (height->parsed()) return run_height(s);
    for (const auto& [sub, c] : subs)
      if (sub->parsed()) return run_construction(s, c);
    Construction c = Construction::suite;
    if (!s.construction.empty())
      c = parse_construction(s.construction);
    else if (!s.input.empty())
      c = Construction::checks;
    return run_construction(s, c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::schema_error:
      case ErrorCode::asymmetric_gram:
      case ErrorCode::bad_tower_expr:
      case ErrorCode::unknown_bound_id:
      case ErrorCode::bad_params:
      case ErrorCode::dimension_too_small:
      case ErrorCode::ambient_mismatch:
      case ErrorCode::degree_cap_exceeded:
        return kInputError;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
