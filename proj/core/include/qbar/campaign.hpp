#pragma once

#include "qbar/io.hpp"
#include "qbar/suite.hpp"

#include <optional>

namespace qbar {

enum class Construction { isotropic, maxiso, witt, orthobasis, cd, suite, smallbasis, checks };
std::string_view construction_name(Construction c);
Construction parse_construction(std::string_view name);  // SchemaError

struct InstanceConfig {
  std::size_t n_min = 2, n_max = 6;
  std::size_t l_min = 1;
  std::optional<std::size_t> l_max;  // defaults to N
  long bound = 10;                   // Gram numerators and denominators
  double singular_rate = 0;          // share of instances with a nontrivial radical
  bool isometry = false;             // draw a product of reflections as well
  unsigned degree_cap = TowerContext::default_degree_cap;
};

// Seeded draw; regular unless the singular branch is taken. L = 0 is rejected.
InstanceSpec random_instance(const InstanceConfig& cfg, std::uint64_t seed);
// product of `count` reflections at random anisotropic vectors of Z
Matrix random_isometry(const QuadraticSpace& q, std::size_t count, std::mt19937_64& rng);

struct InstanceResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0, l = 0;
  std::string status = "ok";  // ok | failed | degree-cap | check-failed
  std::string error;
  json output;
  std::vector<BoundCertificate> certificates;
  std::vector<std::string> notes;
  double seconds = 0;
};

// Runs one construction on one instance with exact checks of the output.
InstanceResult run_instance(const InstanceSpec& spec, Construction c, const EngineOptions& opt);

struct CampaignConfig {
  Construction construction = Construction::maxiso;
  std::size_t count = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  InstanceConfig instances;
  EngineOptions engine;
};

struct Tally {
  std::size_t verified = 0, violated = 0, inconclusive = 0;
  std::size_t slack_count = 0;
  double slack_min = 0, slack_max = 0, slack_sum = 0;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<InstanceResult> instances;
  std::map<std::string, Tally> tallies;
  std::size_t failed = 0, degree_cap_hits = 0, check_failures = 0, small_basis_unverified = 0;
  double seconds = 0;

  Tally totals() const;
  int exit_code() const;  // 0, 2 violated or failed checks, 3 inconclusive or failures
};

std::uint64_t instance_seed(std::uint64_t seed, std::size_t index);
CampaignReport run_campaign(const CampaignConfig& cfg);
CampaignReport single_report(const CampaignConfig& cfg, InstanceResult r);
void tally(CampaignReport& report);

json report_json(const CampaignReport& r, bool mask_timing = false);
std::string report_csv(const CampaignReport& r);
std::string report_summary(const CampaignReport& r);
json config_json(const CampaignConfig& c);

}  // namespace qbar
