#include <doctest.h>

#include "helpers.hpp"

using namespace qbar;

namespace {
CampaignConfig small(Construction c, std::size_t count, unsigned jobs) {
  CampaignConfig cfg;
  cfg.construction = c;
  cfg.count = count;
  cfg.seed = 17;
  cfg.jobs = jobs;
  cfg.instances.n_max = 4;
  return cfg;
}
}  // namespace

TEST_CASE("instance seeds are stable") {
  CHECK(instance_seed(1, 0) == instance_seed(1, 0));
  CHECK(instance_seed(1, 0) != instance_seed(1, 1));
  CHECK(instance_seed(1, 0) != instance_seed(2, 0));
}

TEST_CASE("random instances are regular and reproducible") {
  InstanceConfig cfg;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    InstanceSpec a = random_instance(cfg, seed), b = random_instance(cfg, seed);
    CHECK(a.n >= cfg.n_min);
    CHECK(a.n <= cfg.n_max);
    CHECK(a.form->identical(*b.form));
    CHECK(a.space().regular());
  }
}

TEST_CASE("singular instances") {
  InstanceConfig cfg;
  cfg.singular_rate = 1;
  cfg.n_min = 3;
  int singular = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    if (!random_instance(cfg, seed).space().regular()) ++singular;
  CHECK(singular > 0);
}

TEST_CASE("zero dimensional subspaces are rejected") {
  InstanceConfig cfg;
  cfg.l_min = 0;
  cfg.l_max = 0;
  try {
    random_instance(cfg, 1);
    FAIL("expected DimensionTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::dimension_too_small);
  }
}

TEST_CASE("campaign output does not depend on the job count") {
  auto a = report_json(run_campaign(small(Construction::witt, 12, 1)), true);
  auto b = report_json(run_campaign(small(Construction::witt, 12, 4)), true);
  CHECK(a.dump() == b.dump());
  CHECK(a["timing"].is_null());
}

TEST_CASE("exit codes") {
  CampaignReport r;
  r.tallies["qz_bound"].verified = 3;
  CHECK(r.exit_code() == 0);
  r.tallies["qz_bound"].inconclusive = 1;
  CHECK(r.exit_code() == 3);
  r.tallies["qz_bound"].violated = 1;
  CHECK(r.exit_code() == 2);
  CampaignReport f;
  f.failed = 1;
  CHECK(f.exit_code() == 3);
  CampaignReport g;
  g.check_failures = 1;
  CHECK(g.exit_code() == 2);
}

TEST_CASE("csv report") {
  auto rep = run_campaign(small(Construction::isotropic, 3, 1));
  std::string csv = report_csv(rep);
  CHECK(csv.rfind("instance_id,bound_id,lhs_hi,rhs_lo,slack,verdict,caveats", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') > 3);
}

TEST_CASE("construction names") {
  for (auto c : {Construction::isotropic, Construction::maxiso, Construction::witt, Construction::orthobasis,
                 Construction::cd, Construction::suite, Construction::smallbasis, Construction::checks})
    CHECK(parse_construction(construction_name(c)) == c);
  CHECK_THROWS_AS(parse_construction("nope"), Error);
}

TEST_CASE("empty suite instance") {
  CHECK(inequality_suite(SuiteInstance{}).empty());
}
