#pragma once

#include "qbar/session.hpp"

#include <optional>

namespace qbar {

// One draw of the stand-alone inequality families. n = 0 and no form is the
// empty instance.
struct SuiteInstance {
  std::size_t n = 0;
  std::uint64_t seed = 1;
  long bound = 10;
  TowerContext context = TowerContext::rational();
  std::optional<Matrix> form;  // used for mult_bound and hf_vs_curly instead of a random form
};

std::vector<BoundCertificate> inequality_suite(const SuiteInstance& inst, const EngineOptions& opt = {});

// the families, exposed separately for tests
namespace suite {
using Rng = std::mt19937_64;
std::vector<BoundCertificate> wedge(Rng& rng, std::size_t n, const TowerContext& ctx, const EngineOptions& opt);
std::vector<BoundCertificate> mult(Rng& rng, const Matrix& f, const EngineOptions& opt);
std::vector<BoundCertificate> intersection(Rng& rng, std::size_t n, const TowerContext& ctx, const EngineOptions& opt);
std::vector<BoundCertificate> matrix_pm(const Matrix& a, const EngineOptions& opt);
std::vector<BoundCertificate> matrix_prod(const Matrix& a, const Matrix& b, const EngineOptions& opt);
std::vector<BoundCertificate> sum_height(const Vector& a, const std::vector<Vector>& xs, const EngineOptions& opt);
std::vector<BoundCertificate> hf_vs_curly(const Matrix& f, const EngineOptions& opt);
}  // namespace suite

}  // namespace qbar
