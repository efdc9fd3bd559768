#include <doctest.h>

#include "helpers.hpp"

using namespace qbar;

namespace {
ErrorCode code_of(const std::function<void()>& f, std::string* what = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.code();
  }
  return ErrorCode::proof_gap;
}
}  // namespace

TEST_CASE("parse a tower instance with user generator names") {
  InstanceSpec s = parse_instance(R"({
    "N": 3,
    "tower": [{"name": "r", "square": "2"}, {"name": "t", "square": "r"}],
    "form": [["1", "r", "0"], ["r", "t", "0"], ["0", "0", "-1"]],
    "subspace": [["1", "0", "0"], ["0", "1", "r"]],
    "vector": ["1", "t", "0"],
    "seed": 9
  })");
  CHECK(s.n == 3);
  CHECK(s.tower.generator_count() == 2);
  CHECK(s.generator_names == std::vector<std::string>{"r", "t"});
  CHECK((*s.form)(1, 1).identical(TowerElement::generator(s.tower, 1)));
  CHECK(s.z().dim() == 2);
  CHECK(s.seed == 9u);
  CHECK(s.space().dim() == 2);
}

TEST_CASE("instance round trip") {
  InstanceSpec s = parse_instance(R"({"tower": [{"name": "a", "square": "5"}],
    "form": [["1", "a"], ["a", "1/2"]], "subspace": "full"})");
  InstanceSpec t = parse_instance(instance_to_json(s).dump());
  REQUIRE(t.form);
  CHECK(t.n == 2);
  CHECK(t.form->identical(*s.form));
}

TEST_CASE("schema errors carry a pointer") {
  std::string what;
  CHECK(code_of([&] { parse_instance(R"({"N": 2, "form": [["1", "0"], ["0", "1"]], "colour": 1})"); }, &what) ==
        ErrorCode::schema_error);
  CHECK(what.find("/colour") != std::string::npos);
  CHECK(code_of([&] { parse_instance(R"({"N": 2, "form": [["1", "0"], ["0"]]})"); }, &what) == ErrorCode::schema_error);
  CHECK(what.find("/form/1") != std::string::npos);
  CHECK(code_of([&] { parse_instance("{not json"); }) == ErrorCode::schema_error);
  CHECK(code_of([&] { parse_instance(R"({"N": 2, "form": [["1", "2"], ["3", "1"]]})"); }) == ErrorCode::asymmetric_gram);
  CHECK(code_of([&] { parse_instance(R"({"N": 1, "form": [["1+q"]]})"); }) == ErrorCode::bad_tower_expr);
  CHECK(code_of([&] { parse_instance(R"({"tower": [{"name": "z", "square": "0"}], "N": 1})"); }) !=
        ErrorCode::proof_gap);
  CHECK(code_of([&] {
          parse_instance(R"({"checks": [{"bound_id": "made_up", "lhs": 1}]})");
        }) == ErrorCode::unknown_bound_id);
}

TEST_CASE("degree cap while parsing") {
  CHECK(code_of([&] {
          parse_instance(R"({"N": 1, "tower": [{"name": "a", "square": "2"}, {"name": "b", "square": "3"}]})", 2);
        }) == ErrorCode::degree_cap_exceeded);
}

TEST_CASE("check requests") {
  InstanceSpec s = parse_instance(R"({"checks": [
    {"bound_id": "qz_bound", "lhs": {"lo": "1", "hi": "2"}, "params": {"HF": {"inhom": ["4"]}}},
    {"bound_id": "sum_height", "lhs": {"vector": ["1", "2"]},
     "params": {"Ha": {"vector": ["1", "1"]}, "hx": [{"inhom": ["1", "0"]}, {"inhom": ["0", "1"]}]}},
    {"bound_id": "siegel3", "lhs": "3", "params": {"L": 1, "HZ": {"subspace": [["1", "2", "2"]]}}}
  ]})");
  REQUIRE(s.checks.size() == 3);
  for (const auto& c : s.checks) CHECK(check(c.bound_id, c.lhs, c.params).verdict == Verdict::verified);
  CHECK(s.checks[1].params.list("hx").size() == 2);
}

TEST_CASE("certificate json") {
  BoundParams p;
  p.set("HF", height_vector(qbar::test::vec(TowerContext::rational(), {"3", "4"})));
  BoundCertificate c = check("qz_bound", LogProduct::constant(1), p);
  json j = to_json(c);
  CHECK(j["bound_id"] == "qz_bound");
  CHECK(j["verdict"] == "verified");
  CHECK(j["params"]["HF"]["lo"].get<double>() <= 5.0);
  CHECK(j["params"]["HF"]["hi"].get<double>() >= 5.0);
  CHECK(j.contains("slack"));
}
