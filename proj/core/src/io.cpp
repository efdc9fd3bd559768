#include "qbar/io.hpp"

#include <cctype>
#include <map>
#include <set>

namespace qbar {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  fail(ErrorCode::schema_error, (path.empty() ? std::string("/") : path) + ": " + what);
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

bool identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

class Reader {
 public:
  explicit Reader(unsigned cap) : ctx_(TowerContext::rational(cap)) {}

  void tower(const json& j, const std::string& path, std::vector<std::string>& names) {
    if (!j.is_array()) schema(path, "tower must be an array of {name, square}");
    for (std::size_t i = 0; i < j.size(); ++i) {
      const json& g = j[i];
      const std::string p = at(path, i);
      if (!g.is_object() || !g.contains("name") || !g.contains("square")) schema(p, "expected {name, square}");
      for (const auto& [k, v] : g.items())
        if (k != "name" && k != "square") schema(at(p, k), "unknown key");
      if (!g["name"].is_string()) schema(at(p, "name"), "name must be a string");
      std::string name = g["name"].get<std::string>();
      if (!identifier(name)) fail(ErrorCode::bad_tower_expr, at(p, "name") + ": '" + name + "' is not an identifier");
      if (rename_.count(name)) fail(ErrorCode::bad_tower_expr, at(p, "name") + ": duplicate generator '" + name + "'");
      TowerElement d = element(g["square"], at(p, "square"));
      std::vector<Rational> c = d.coeffs();
      try {
        ctx_ = ctx_.with_generator(std::move(c));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::degree_cap_exceeded) throw;
        fail(ErrorCode::bad_tower_expr, at(p, "square") + ": " + e.what());
      }
      rename_[name] = ctx_.generator(ctx_.generator_count() - 1).name;
      names.push_back(name);
    }
  }

  TowerElement element(const json& j, const std::string& path) const {
    std::string text;
    if (j.is_string())
      text = j.get<std::string>();
    else if (j.is_number_integer())
      text = j.dump();
    else
      schema(path, "expected a tower-element string");
    try {
      return parse_element(ctx_, renamed(text)).lift(ctx_);
    } catch (const Error& e) {
      fail(ErrorCode::bad_tower_expr, path + ": " + e.what());
    }
  }

  Vector vector(const json& j, const std::string& path, std::size_t n) const {
    if (!j.is_array()) schema(path, "expected an array");
    if (n && j.size() != n) schema(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(element(j[i], at(path, i)));
    return v;
  }

  Matrix matrix(const json& j, const std::string& path, std::size_t n) const {
    if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of rows");
    if (n && j.size() != n) schema(path, "expected " + std::to_string(n) + " rows, got " + std::to_string(j.size()));
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(vector(j[i], at(path, i), j.size()));
    Matrix m = Matrix::from_rows(rows);
    return m.lifted(ctx_);
  }

  std::vector<Vector> vectors(const json& j, const std::string& path, std::size_t n) const {
    if (!j.is_array()) schema(path, "expected an array of vectors");
    std::vector<Vector> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector(j[i], at(path, i), n));
    return out;
  }

  std::optional<HeightValue> height(const json& j, const std::string& path, const HeightOptions& opt) const {
    if (!j.is_object() || j.size() != 1) return std::nullopt;
    const auto& [kind, v] = *j.items().begin();
    const std::string p = at(path, kind);
    if (kind == "vector") return height_vector(vector(v, p, 0), opt);
    if (kind == "inhom") return height_inhom(vector(v, p, 0), opt);
    if (kind == "gram") return height_gram(matrix(v, p, 0), opt);
    if (kind == "form") return height_form_poly(matrix(v, p, 0), opt);
    if (kind == "subspace") {
      auto vs = vectors(v, p, 0);
      if (vs.empty()) schema(p, "empty subspace");
      return height_subspace(Subspace(vs[0].size(), vs, ctx_), opt);
    }
    return std::nullopt;
  }

  Rational rational(const json& j, const std::string& path) const {
    try {
      if (j.is_string()) return parse_rational(j.get<std::string>());
      if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const std::exception&) {
    }
    schema(path, "expected a rational");
  }

  CheckRequest check(const json& j, const std::string& path) const {
    if (!j.is_object()) schema(path, "expected {bound_id, lhs, params}");
    for (const auto& [k, v] : j.items())
      if (k != "bound_id" && k != "lhs" && k != "params") schema(at(path, k), "unknown key");
    if (!j.contains("bound_id") || !j["bound_id"].is_string()) schema(at(path, "bound_id"), "missing bound_id");
    CheckRequest r;
    r.bound_id = j["bound_id"].get<std::string>();
    if (!is_known_bound(r.bound_id)) fail(ErrorCode::unknown_bound_id, at(path, "bound_id") + ": " + r.bound_id);
    if (!j.contains("lhs")) schema(at(path, "lhs"), "missing lhs");
    const json& lhs = j["lhs"];
    const std::string lp = at(path, "lhs");
    HeightOptions opt;
    if (lhs.is_object() && lhs.contains("lo") && lhs.contains("hi") && lhs.size() == 2) {
      Rational lo = rational(lhs["lo"], at(lp, "lo")), hi = rational(lhs["hi"], at(lp, "hi"));
      if (sgn(lo) <= 0 || lo > hi) schema(lp, "need 0 < lo <= hi");
      r.lhs = LogProduct::opaque(lo, hi);
    } else if (auto h = height(lhs, lp, opt)) {
      r.lhs = LogProduct::of(*h);
    } else if (lhs.is_string() || lhs.is_number_integer()) {
      Rational q = rational(lhs, lp);
      if (sgn(q) <= 0) schema(lp, "lhs must be positive");
      r.lhs = LogProduct::constant(q);
    } else {
      schema(lp, "expected a value, {lo, hi} or a height object");
    }
    if (j.contains("params")) {
      const json& ps = j["params"];
      const std::string pp = at(path, "params");
      if (!ps.is_object()) schema(pp, "params must be an object");
      for (const auto& [k, v] : ps.items()) {
        const std::string kp = at(pp, k);
        if (v.is_number_integer()) {
          r.params.set(k, v.get<long>());
        } else if (v.is_array()) {
          std::vector<HeightValue> hs;
          for (std::size_t i = 0; i < v.size(); ++i) {
            auto h = height(v[i], at(kp, i), opt);
            if (!h) schema(at(kp, i), "expected a height object");
            hs.push_back(*h);
          }
          r.params.set(k, std::move(hs));
        } else if (auto h = height(v, kp, opt)) {
          r.params.set(k, *h);
        } else {
          schema(kp, "expected an integer, a height object or a list of them");
        }
      }
    }
    return r;
  }

  const TowerContext& context() const { return ctx_; }

 private:
  std::string renamed(const std::string& s) const {
    if (rename_.empty()) return s;
    std::string out;
    for (std::size_t i = 0; i < s.size();) {
      if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
        std::string tok = s.substr(i, j - i);
        auto it = rename_.find(tok);
        out += it == rename_.end() ? tok : it->second;
        i = j;
      } else {
        out += s[i++];
      }
    }
    return out;
  }

  TowerContext ctx_;
  std::map<std::string, std::string> rename_;
};

const std::set<std::string> kKeys = {"N", "tower", "form", "subspace", "isometry", "vector", "seed", "checks"};

}  // namespace

Subspace InstanceSpec::z() const {
  if (subspace) return *subspace;
  return Subspace::full(n, tower);
}

QuadraticSpace InstanceSpec::space() const {
  if (!form) schema("/form", "instance has no form");
  return QuadraticSpace(*form, z());
}

InstanceSpec parse_instance(std::string_view bytes, unsigned degree_cap) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::schema_error, std::string("invalid JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) schema("", "instance must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!kKeys.count(k)) schema("/" + k, "unknown key");

  InstanceSpec spec;
  Reader rd(degree_cap);
  if (j.contains("tower")) rd.tower(j["tower"], "/tower", spec.generator_names);
  spec.tower = rd.context();

  if (j.contains("N")) {
    if (!j["N"].is_number_unsigned() || j["N"].get<long>() < 1) schema("/N", "N must be a positive integer");
    spec.n = j["N"].get<std::size_t>();
  } else if (j.contains("form") && j["form"].is_array()) {
    spec.n = j["form"].size();
  } else if (j.contains("vector") && j["vector"].is_array()) {
    spec.n = j["vector"].size();
  } else if (!j.contains("checks")) {
    schema("/N", "missing N");
  }

  if (j.contains("form")) {
    Matrix f = rd.matrix(j["form"], "/form", spec.n);
    for (std::size_t r = 0; r < spec.n; ++r)
      for (std::size_t c = r + 1; c < spec.n; ++c)
        if (!(f(r, c) - f(c, r)).is_zero())
          fail(ErrorCode::asymmetric_gram,
               "/form/" + std::to_string(r) + "/" + std::to_string(c) + ": differs from /form/" + std::to_string(c) +
                   "/" + std::to_string(r));
    spec.form = std::move(f);
  }
  if (j.contains("subspace")) {
    const json& s = j["subspace"];
    if (s.is_string()) {
      if (s.get<std::string>() != "full") schema("/subspace", "expected \"full\" or a list of basis vectors");
    } else {
      auto basis = rd.vectors(s, "/subspace", spec.n);
      spec.subspace = Subspace(spec.n, basis, spec.tower);
    }
  }
  if (j.contains("isometry")) spec.isometry = rd.matrix(j["isometry"], "/isometry", spec.n);
  if (j.contains("vector")) spec.vector = rd.vector(j["vector"], "/vector", spec.n);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) schema("/seed", "seed must be an unsigned integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("checks")) {
    const json& cs = j["checks"];
    if (!cs.is_array()) schema("/checks", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) spec.checks.push_back(rd.check(cs[i], at("/checks", i)));
  }
  return spec;
}

json to_json(const TowerElement& x) { return x.str(); }

json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

json to_json(const Subspace& z) {
  json a = json::array();
  for (const auto& b : z.basis()) a.push_back(to_json(b));
  return a;
}

json to_json(const HeightValue& h) { return json{{"lo", h.lo()}, {"hi", h.hi()}}; }

json tower_to_json(const TowerContext& ctx) {
  json a = json::array();
  for (unsigned i = 0; i < ctx.generator_count(); ++i) {
    const Generator& g = ctx.generator(i);
    TowerContext pre = ctx.prefix(i);
    a.push_back({{"name", g.name}, {"square", TowerElement(pre, g.square).str()}});
  }
  return a;
}

json to_json(const BoundCertificate& c) {
  json params = json::object();
  for (const auto& [k, v] : c.int_params) params[k] = v;
  for (const auto& [k, v] : c.height_params) params[k] = {{"lo", v.first}, {"hi", v.second}};
  for (const auto& [k, vs] : c.list_params) {
    json a = json::array();
    for (const auto& v : vs) a.push_back({{"lo", v.first}, {"hi", v.second}});
    params[k] = a;
  }
  json j{{"bound_id", c.bound_id},
         {"params", params},
         {"lhs", {{"lo", c.lhs_lo}, {"hi", c.lhs_hi}}},
         {"lhs_log", {{"lo", c.lhs_log_lo}, {"hi", c.lhs_log_hi}}},
         {"rhs_log", {{"lo", c.rhs_log_lo}, {"hi", c.rhs_log_hi}}},
         {"verdict", std::string(verdict_name(c.verdict))},
         {"slack", c.slack()},
         {"caveats", c.caveats}};
  if (!c.site.empty()) j["site"] = c.site;
  j["level"] = c.level;
  if (c.trace) j["trace"] = true;
  if (c.exact_decision) j["exact"] = true;
  return j;
}

json to_json(const MaxIsotropic& m) {
  json levels = json::array();
  for (const auto& l : m.levels)
    levels.push_back({{"level", l.level},
                      {"k", l.k},
                      {"w1", to_json(l.w1)},
                      {"w2", to_json(l.w2)},
                      {"h1", to_json(l.h1)},
                      {"h2", to_json(l.h2)},
                      {"chosen", l.chosen}});
  return json{{"v", to_json(m.v)}, {"dim", m.v.dim()}, {"levels", levels}};
}

json to_json(const WittDecomposition& w) {
  json planes = json::array();
  for (const auto& p : w.planes) planes.push_back({{"x", to_json(p.x)}, {"y", to_json(p.y)}});
  json j{{"radical", to_json(w.radical)}, {"planes", planes}};
  j["anisotropic_line"] = w.anisotropic_line ? to_json(*w.anisotropic_line) : json(nullptr);
  return j;
}

json to_json(const std::vector<Reflection>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(to_json(r.x));
  return a;
}

json instance_to_json(const InstanceSpec& spec) {
  json j{{"N", spec.n}};
  if (spec.tower.generator_count()) j["tower"] = tower_to_json(spec.tower);
  if (spec.form) j["form"] = to_json(*spec.form);
  j["subspace"] = spec.subspace ? to_json(*spec.subspace) : json("full");
  if (spec.isometry) j["isometry"] = to_json(*spec.isometry);
  if (spec.vector) j["vector"] = to_json(*spec.vector);
  if (spec.seed) j["seed"] = *spec.seed;
  return j;
}

}  // namespace qbar
