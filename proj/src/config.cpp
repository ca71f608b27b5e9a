#include "algmech/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "algmech/errors.hpp"
#include "algmech/lagrangian.hpp"

namespace algmech {

using json = nlohmann::json;

namespace {

bool base_only(const Expr& e, int n) {
  const auto vars = e.variables();
  return vars.empty() || vars.back() < n;
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

void require_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError(child(path, key), "unknown key");
  }
}

const json& member(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(child(path, key), "missing");
  return *it;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

long long get_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<long long>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

const json& get_array(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  if (size && j.size() != *size)
    throw ConfigError(path, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  return j;
}

std::vector<double> get_numbers(const json& j, const std::string& path, std::size_t size) {
  get_array(j, path, size);
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(get_number(j[k], child(path, k)));
  return out;
}

std::pair<double, double> get_range(const json& j, const std::string& path) {
  const auto v = get_numbers(j, path, 2);
  if (!(v[0] <= v[1])) throw ConfigError(path, "expected [lo, hi] with lo <= hi");
  return {v[0], v[1]};
}

Expr get_expr(const AlgebroidDef& def, const json& j, const std::string& path) {
  // numbers are accepted as constant expressions
  std::string source;
  if (j.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    source = os.str();
  } else {
    source = get_string(j, path);
  }
  try {
    return def.parse(source);
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

std::vector<Expr> get_exprs(const AlgebroidDef& def, const json& j, const std::string& path, std::size_t size) {
  get_array(j, path, size);
  std::vector<Expr> out;
  for (std::size_t k = 0; k < size; ++k) out.push_back(get_expr(def, j[k], child(path, k)));
  return out;
}

std::vector<std::string> get_names(const json& j, const std::string& path) {
  get_array(j, path);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string s = get_string(j[k], child(path, k));
    const bool ident = !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_') &&
                       std::all_of(s.begin(), s.end(), [](char c) {
                         return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                       });
    if (!ident) throw ConfigError(child(path, k), "'" + s + "' is not an identifier");
    out.push_back(std::move(s));
  }
  return out;
}

int get_index(const json& j, const std::string& path, int m) {
  const long long k = get_integer(j, path);
  if (k < 1 || k > m) throw ConfigError(path, "index must be in 1.." + std::to_string(m));
  return static_cast<int>(k);
}

Candidate parse_candidate(const AlgebroidDef& def, const json& j, const std::string& path) {
  Candidate c;
  c.path = path;
  const std::string type = get_string(member(j, path, "type"), child(path, "type"));
  const std::size_t m = def.m;
  if (type == "base_section") {
    require_keys(j, path, {"name", "type", "components", "expect"});
    c.type = Candidate::Type::BaseSection;
    c.components = get_exprs(def, member(j, path, "components"), child(path, "components"), m);
  } else if (type == "prolongation_section") {
    require_keys(j, path, {"name", "type", "X", "V", "builtin", "check", "expect"});
    c.type = Candidate::Type::ProlongationSection;
    if (j.contains("builtin")) {
      if (j.contains("X") || j.contains("V")) throw ConfigError(child(path, "builtin"), "builtin excludes X and V");
      c.builtin = get_string(j["builtin"], child(path, "builtin"));
      if (c.builtin != "semispray" && c.builtin != "euler" && c.builtin != "energy_semispray")
        throw ConfigError(child(path, "builtin"), "expected semispray, euler or energy_semispray");
    } else {
      c.X = get_exprs(def, member(j, path, "X"), child(path, "X"), m);
      c.V = get_exprs(def, member(j, path, "V"), child(path, "V"), m);
    }
    c.check = j.contains("check") ? get_string(j["check"], child(path, "check")) : "dynamical";
    if (c.check != "dynamical" && c.check != "newtonoid" && c.check != "cartan")
      throw ConfigError(child(path, "check"), "expected dynamical, newtonoid or cartan");
  } else if (type == "newtonoid") {
    require_keys(j, path, {"name", "type", "X", "expect"});
    c.type = Candidate::Type::Newtonoid;
    c.X = get_exprs(def, member(j, path, "X"), child(path, "X"), m);
  } else if (type == "conserved_function") {
    require_keys(j, path, {"name", "type", "f", "expect"});
    c.type = Candidate::Type::ConservedFunction;
    c.f = get_expr(def, member(j, path, "f"), child(path, "f"));
  } else if (type == "exact_cartan") {
    require_keys(j, path, {"name", "type", "X", "V", "builtin", "f", "expect"});
    c.type = Candidate::Type::ExactCartan;
    if (j.contains("builtin")) {
      c.builtin = get_string(j["builtin"], child(path, "builtin"));
      if (c.builtin != "semispray" && c.builtin != "euler" && c.builtin != "energy_semispray")
        throw ConfigError(child(path, "builtin"), "expected semispray, euler or energy_semispray");
    } else {
      c.X = get_exprs(def, member(j, path, "X"), child(path, "X"), m);
      c.V = get_exprs(def, member(j, path, "V"), child(path, "V"), m);
    }
    c.f = get_expr(def, member(j, path, "f"), child(path, "f"));
  } else {
    throw ConfigError(child(path, "type"),
                      "expected base_section, prolongation_section, newtonoid, conserved_function or exact_cartan");
  }
  c.name = j.contains("name") ? get_string(j["name"], child(path, "name")) : path;
  if (j.contains("expect")) c.expect = get_bool(j["expect"], child(path, "expect"));
  return c;
}

ReferenceValues parse_reference(const AlgebroidDef& def, const json& j, const std::string& path) {
  get_array(j, path);
  ReferenceValues out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = child(path, k);
    require_keys(j[k], p, {"quantity", "indices", "expr"});
    ReferenceValues::Entry e;
    e.quantity = get_string(member(j[k], p, "quantity"), child(p, "quantity"));
    std::size_t arity = 0;
    if (e.quantity == "S") arity = 1;
    else if (e.quantity == "N" || e.quantity == "jacobi") arity = 2;
    else if (e.quantity == "curvature") arity = 3;
    else throw ConfigError(child(p, "quantity"), "expected S, N, curvature or jacobi");
    const json& idx = get_array(member(j[k], p, "indices"), child(p, "indices"), arity);
    for (std::size_t q = 0; q < arity; ++q) e.indices.push_back(get_index(idx[q], child(child(p, "indices"), q), def.m));
    e.expr = get_expr(def, member(j[k], p, "expr"), child(p, "expr"));
    out.entries.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const char* to_string(Candidate::Type type) {
  switch (type) {
    case Candidate::Type::BaseSection: return "base_section";
    case Candidate::Type::ProlongationSection: return "prolongation_section";
    case Candidate::Type::Newtonoid: return "newtonoid";
    case Candidate::Type::ConservedFunction: return "conserved_function";
    case Candidate::Type::ExactCartan: return "exact_cartan";
  }
  return "";
}

Semispray SystemConfig::spray() const {
  if (semispray) return Semispray::from_expressions(*semispray);
  return canonical_semispray(def, *lagrangian);
}

Connection SystemConfig::nonlinear_connection() const {
  return connection ? Connection::user(*connection) : Connection::canonical();
}

std::vector<EvalPoint> SystemConfig::sample_points() const { return generate_samples(def.n, def.m, samples); }

SystemConfig parse_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", source + ": invalid JSON: " + e.what());
  }
  require_keys(j, "",
               {"$schema", "description", "name", "base_dim", "fiber_rank", "base_coords", "fiber_coords", "anchor",
                "structure", "lagrangian", "semispray", "connection", "candidates", "reference_values", "samples",
                "point", "integrate", "tolerance"});

  SystemConfig cfg;
  cfg.name = j.contains("name") ? get_string(j["name"], "/name") : source;
  const long long n = get_integer(member(j, "", "base_dim"), "/base_dim");
  const long long m = get_integer(member(j, "", "fiber_rank"), "/fiber_rank");
  if (n < 1) throw ConfigError("/base_dim", "must be positive");
  if (m < 1) throw ConfigError("/fiber_rank", "must be positive");

  auto base = get_names(member(j, "", "base_coords"), "/base_coords");
  auto fiber = get_names(member(j, "", "fiber_coords"), "/fiber_coords");
  if (static_cast<long long>(base.size()) != n)
    throw ConfigError("/base_coords", "expected " + std::to_string(n) + " names");
  if (static_cast<long long>(fiber.size()) != m)
    throw ConfigError("/fiber_coords", "expected " + std::to_string(m) + " names");
  std::set<std::string> seen;
  for (const auto& name : base)
    if (!seen.insert(name).second) throw ConfigError("/base_coords", "duplicate coordinate '" + name + "'");
  for (const auto& name : fiber)
    if (!seen.insert(name).second) throw ConfigError("/fiber_coords", "duplicate coordinate '" + name + "'");

  cfg.def = AlgebroidDef::empty(std::move(base), std::move(fiber));
  AlgebroidDef& def = cfg.def;

  const json& anchor = get_array(member(j, "", "anchor"), "/anchor", n);
  for (int i = 0; i < n; ++i) {
    def.anchor[i] = get_exprs(def, anchor[i], child("/anchor", i), m);
    for (int a = 0; a < m; ++a)
      if (!base_only(def.anchor[i][a], def.n))
        throw ConfigError(child(child("/anchor", i), a), "anchor components may depend on base coordinates only");
  }

  if (j.contains("structure")) {
    const json& st = get_array(j["structure"], "/structure");
    std::set<std::tuple<int, int, int>> given;
    for (std::size_t k = 0; k < st.size(); ++k) {
      const std::string p = child("/structure", k);
      require_keys(st[k], p, {"alpha", "beta", "gamma", "expr"});
      const int a = get_index(member(st[k], p, "alpha"), child(p, "alpha"), m) - 1;
      const int b = get_index(member(st[k], p, "beta"), child(p, "beta"), m) - 1;
      const int g = get_index(member(st[k], p, "gamma"), child(p, "gamma"), m) - 1;
      if (a == b) throw ConfigError(p, "alpha = beta; structure functions are antisymmetric");
      if (!given.insert({a, b, g}).second) throw ConfigError(p, "duplicate entry");
      Expr e = get_expr(def, member(st[k], p, "expr"), child(p, "expr"));
      if (!base_only(e, def.n)) throw ConfigError(child(p, "expr"), "structure functions may depend on base coordinates only");
      def.structure[a][b][g] = e;
      // antisymmetric completion unless the mirrored entry is listed explicitly
      if (!given.count({b, a, g})) def.structure[b][a][g] = -e;
    }
  }

  if (j.contains("lagrangian")) cfg.lagrangian = get_expr(def, j["lagrangian"], "/lagrangian");
  if (j.contains("semispray")) cfg.semispray = get_exprs(def, j["semispray"], "/semispray", m);
  if (!cfg.lagrangian && !cfg.semispray) throw ConfigError("/lagrangian", "need a lagrangian or a semispray");
  if (j.contains("connection")) {
    const json& c = get_array(j["connection"], "/connection", m);
    std::vector<std::vector<Expr>> rows;
    for (int a = 0; a < m; ++a) rows.push_back(get_exprs(def, c[a], child("/connection", a), m));
    cfg.connection = std::move(rows);
  }

  if (j.contains("samples")) {
    const json& s = j["samples"];
    require_keys(s, "/samples", {"count", "seed", "x_box", "y_magnitude"});
    if (s.contains("count")) {
      const long long c = get_integer(s["count"], "/samples/count");
      if (c < 1 || c > 100000) throw ConfigError("/samples/count", "must be in 1..100000");
      cfg.samples.count = static_cast<int>(c);
    }
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned()) throw ConfigError("/samples/seed", "expected a non-negative integer");
      cfg.samples.seed = s["seed"].get<std::uint64_t>();
    }
    if (s.contains("x_box")) {
      const json& box = get_array(s["x_box"], "/samples/x_box");
      if (box.size() == 2 && box[0].is_number()) {
        cfg.samples.x_box.assign(n, get_range(box, "/samples/x_box"));
      } else {
        get_array(box, "/samples/x_box", n);
        for (int i = 0; i < n; ++i) cfg.samples.x_box.push_back(get_range(box[i], child("/samples/x_box", i)));
      }
    }
    if (s.contains("y_magnitude")) {
      cfg.samples.y_magnitude = get_range(s["y_magnitude"], "/samples/y_magnitude");
      if (cfg.samples.y_magnitude.first <= 0.0) throw ConfigError("/samples/y_magnitude", "lower bound must be positive");
    }
  }

  if (j.contains("point")) {
    const json& p = j["point"];
    require_keys(p, "/point", {"x", "y"});
    cfg.point = EvalPoint{get_numbers(member(p, "/point", "x"), "/point/x", n),
                          get_numbers(member(p, "/point", "y"), "/point/y", m)};
  }

  if (j.contains("integrate")) {
    const json& s = j["integrate"];
    require_keys(s, "/integrate", {"x0", "y0", "dt", "steps", "drift_tol"});
    IntegrateSpec spec;
    spec.x0 = get_numbers(member(s, "/integrate", "x0"), "/integrate/x0", n);
    spec.y0 = get_numbers(member(s, "/integrate", "y0"), "/integrate/y0", m);
    if (s.contains("dt")) spec.dt = get_number(s["dt"], "/integrate/dt");
    if (s.contains("steps")) spec.steps = static_cast<int>(get_integer(s["steps"], "/integrate/steps"));
    if (s.contains("drift_tol")) spec.drift_tol = get_number(s["drift_tol"], "/integrate/drift_tol");
    if (!(spec.dt > 0.0)) throw ConfigError("/integrate/dt", "must be positive");
    if (spec.steps < 1) throw ConfigError("/integrate/steps", "must be at least 1");
    cfg.integrate = std::move(spec);
  }

  if (j.contains("tolerance")) {
    cfg.tolerance = get_number(j["tolerance"], "/tolerance");
    if (!(cfg.tolerance > 0.0)) throw ConfigError("/tolerance", "must be positive");
  }

  if (j.contains("candidates")) {
    const json& cs = get_array(j["candidates"], "/candidates");
    std::set<std::string> names;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      Candidate c = parse_candidate(def, cs[k], child("/candidates", k));
      if (!names.insert(c.name).second) throw ConfigError(child(child("/candidates", k), "name"), "duplicate name");
      const bool needs_l = c.type == Candidate::Type::ExactCartan || c.builtin == "energy_semispray" ||
                           (c.type == Candidate::Type::ProlongationSection && c.check == "cartan");
      if (needs_l && !cfg.lagrangian) throw ConfigError(c.path, "needs a lagrangian");
      cfg.candidates.push_back(std::move(c));
    }
  }

  if (j.contains("reference_values")) cfg.reference = parse_reference(def, j["reference_values"], "/reference_values");
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

EvalPoint parse_point(const std::string& text, int n, int m) {
  const auto xpos = text.find("x=");
  const auto ypos = text.find("y=");
  if (xpos == std::string::npos || ypos == std::string::npos || ypos < xpos)
    throw ConfigError("--at", "expected \"x=...;y=...\"");
  auto numbers = [](std::string s, std::size_t count, const char* what) {
    for (char& c : s)
      if (c == ',' || c == ';' || c == '(' || c == ')' || c == '[' || c == ']') c = ' ';
    std::istringstream is(s);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ConfigError("--at", std::string("bad number '") + tok + "' in " + what);
      out.push_back(v);
    }
    if (out.size() != count)
      throw ConfigError("--at", std::string(what) + " needs " + std::to_string(count) + " values");
    return out;
  };
  return EvalPoint{numbers(text.substr(xpos + 2, ypos - xpos - 2), n, "x"), numbers(text.substr(ypos + 2), m, "y")};
}

}  // namespace algmech
