#pragma once

#include "qbar/certify.hpp"
#include "qbar/reduction.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace qbar {

struct EngineOptions {
  HeightOptions heights;
  CheckOptions checks;
  bool trace = false;               // also check the proof-internal inequalities
  bool literal_orthobasis = false;  // orthogonal_basis follows the unrepaired branch
  std::uint64_t seed = 1;

  ReductionOptions reduction() const {
    ReductionOptions r;
    r.heights = heights;
    r.checks = checks;
    r.trace = trace;
    return r;
  }
};

// Per-construction state: options, the certificate sink, notes and a seeded
// generator. One session per instance; not shared between threads.
class Session {
 public:
  explicit Session(EngineOptions o = {}) : options(o), rng(o.seed) {
    certificates.options = o.checks;
    certificates.trace_enabled = o.trace;
  }

  EngineOptions options;
  CertificateLog certificates;
  std::vector<std::string> notes;
  std::mt19937_64 rng;

  HeightValue height(const Vector& x) const { return height_vector(x, options.heights); }
  HeightValue inhom(const Vector& x) const { return height_inhom(x, options.heights); }
  HeightValue height(const Subspace& z) const { return height_subspace(z, options.heights); }
  HeightValue gram_height(const Matrix& f) const { return height_gram(f, options.heights); }

  // small basis; its siegel3 certificate is logged once per distinct basis
  std::shared_ptr<const SmallBasis> small_basis(const Subspace& z) {
    auto sb = qbar::small_basis(z, options.reduction());
    if (seen_.insert(sb.get()).second) {
      held_.push_back(sb);
      BoundCertificate c = sb->certificate;
      c.trace = false;
      certificates.add(c);
      if (sb->inhom_chain) certificates.add(*sb->inhom_chain);
    }
    if (sb->roy_thunder_met() != Verdict::verified) small_basis_caveat_ = true;
    return sb;
  }

  // caveats to attach to downstream certificates
  std::vector<std::string> caveats() const {
    if (small_basis_caveat_) return {"small-basis-unverified"};
    return {};
  }

  void emit(const std::string& id, const LogProduct& lhs, const BoundParams& params, const std::string& site,
            int level = 0, std::vector<std::string> extra = {}) {
    auto c = caveats();
    c.insert(c.end(), extra.begin(), extra.end());
    certificates.emit(id, lhs, params, site, level, std::move(c));
  }

 private:
  std::set<const void*> seen_;
  std::vector<std::shared_ptr<const SmallBasis>> held_;  // keeps addresses in seen_ unique
  bool small_basis_caveat_ = false;
};

}  // namespace qbar
