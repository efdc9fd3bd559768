#pragma once

#include "qbar/isometry.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string_view>

namespace qbar {

using json = nlohmann::json;

// A stand-alone certificate request: lhs and params given directly.
struct CheckRequest {
  std::string bound_id;
  LogProduct lhs;
  BoundParams params;
};

struct InstanceSpec {
  std::size_t n = 0;
  TowerContext tower = TowerContext::rational();
  std::vector<std::string> generator_names;  // as written in the input
  std::optional<Matrix> form;
  std::optional<Subspace> subspace;  // nullopt: full space
  std::optional<Matrix> isometry;
  std::optional<Vector> vector;
  std::optional<std::uint64_t> seed;
  std::vector<CheckRequest> checks;

  QuadraticSpace space() const;  // SchemaError without a form
  Subspace z() const;
};

// SchemaError (with a JSON pointer to the offending value), AsymmetricGram,
// BadTowerExpr.
InstanceSpec parse_instance(std::string_view bytes, unsigned degree_cap = TowerContext::default_degree_cap);
json instance_to_json(const InstanceSpec& spec);

json to_json(const TowerElement& x);
json to_json(const Vector& v);
json to_json(const Matrix& m);
json to_json(const Subspace& z);  // basis list
json to_json(const HeightValue& h);
json to_json(const BoundCertificate& c);
json to_json(const MaxIsotropic& m);
json to_json(const WittDecomposition& w);
json to_json(const std::vector<Reflection>& rs);
json tower_to_json(const TowerContext& ctx);

}  // namespace qbar
