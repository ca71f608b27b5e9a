#include "algmech/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "algmech/errors.hpp"
#include "algmech/lagrangian.hpp"
#include "algmech/symmetry.hpp"
#include "examples_data.hpp"

namespace algmech {

namespace {

constexpr double kIdentityTol = 1e-9;

Json vec(const Eigen::VectorXd& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

Json mat(const Eigen::MatrixXd& a) {
  Json out = Json::array();
  for (int r = 0; r < a.rows(); ++r) out.push_back(vec(Eigen::VectorXd(a.row(r).transpose())));
  return out;
}

Json point_json(const EvalPoint& p) { return Json{{"x", p.x}, {"y", p.y}}; }

double max_abs(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

Json per_sample(const std::vector<SampleResidual>& samples) {
  Json out = Json::array();
  for (const auto& s : samples) out.push_back(max_abs(s.residual));
  return out;
}

Json verdict_json(const SymmetryVerdict& v) {
  Json details = Json::object();
  for (const auto& [k, x] : v.details) details[k] = x;
  return Json{{"kind", to_string(v.kind)}, {"max_residual", v.max_residual}, {"details", details}, {"pass", v.pass}};
}

std::string section_label(const Candidate& c) {
  if (!c.builtin.empty()) return c.builtin;
  std::string s = "X=(";
  for (std::size_t k = 0; k < c.X.size(); ++k) s += (k ? ", " : "") + c.X[k].str();
  s += ")";
  if (!c.V.empty()) {
    s += " V=(";
    for (std::size_t k = 0; k < c.V.size(); ++k) s += (k ? ", " : "") + c.V[k].str();
    s += ")";
  }
  return s;
}

SectionField candidate_field(const SystemConfig& cfg, const Candidate& c) {
  if (c.builtin == "semispray") return semispray_field();
  if (c.builtin == "euler") return euler_field();
  if (c.builtin == "energy_semispray") return scaled_field(energy_field(*cfg.lagrangian), semispray_field());
  if (c.type == Candidate::Type::Newtonoid) return newtonoid_completion(c.X);
  return section_field(ProlongationSection{c.X, c.V});
}

// Dynamical, Newtonoid and invariant-equation verdicts of one section, plus
// the Cartan verdict when a Lagrangian is configured.
Json section_profile(const SystemConfig& cfg, const Semispray& s, const SectionField& a,
                     const std::vector<EvalPoint>& samples, std::optional<SymmetryVerdict>& dyn_out,
                     std::optional<SymmetryVerdict>& newt_out, std::optional<SymmetryVerdict>& cartan_out) {
  const double tol = cfg.tolerance;
  const SymmetryVerdict dyn = dynamical_symmetry_check(cfg.def, s, a, samples, tol);
  const SymmetryVerdict newt = newtonoid_check(cfg.def, s, a, samples, tol);
  double inv = 0.0;
  for (const auto& p : samples) inv = std::max(inv, max_abs(invariant_equation_residual(cfg.def, s, a, p)));
  Json out{{"dynamical", verdict_json(dyn)},
           {"newtonoid", verdict_json(newt)},
           {"invariant_equation", Json{{"max_residual", inv}, {"pass", inv <= tol}}}};
  out["equivalence_holds"] = dyn.pass == (newt.pass && inv <= tol);
  if (cfg.lagrangian) {
    cartan_out = cartan_symmetry_check(cfg.def, *cfg.lagrangian, a, samples, tol);
    out["cartan"] = verdict_json(*cartan_out);
    out["cartan_implies_dynamical"] = !cartan_out->pass || dyn.pass;
  }
  dyn_out = dyn;
  newt_out = newt;
  return out;
}

void finish_candidate(Json& out, const Candidate& c, bool pass) {
  out["pass"] = pass;
  if (c.expect) {
    out["expect"] = *c.expect;
    out["as_expected"] = pass == *c.expect;
  }
}

}  // namespace

SystemConfig apply_options(SystemConfig cfg, const RunOptions& opts) {
  if (opts.seed) cfg.samples.seed = *opts.seed;
  if (opts.tol) {
    if (!(*opts.tol > 0.0)) throw ConfigError("--tol", "must be positive");
    cfg.tolerance = *opts.tol;
  }
  if (opts.at) cfg.point = parse_point(*opts.at, cfg.def.n, cfg.def.m);
  if (opts.dt || opts.steps) {
    if (!cfg.integrate) cfg.integrate = IntegrateSpec{};
    if (opts.dt) {
      if (!(*opts.dt > 0.0)) throw ConfigError("--dt", "must be positive");
      cfg.integrate->dt = *opts.dt;
    }
    if (opts.steps) {
      if (*opts.steps < 1) throw ConfigError("--steps", "must be at least 1");
      cfg.integrate->steps = *opts.steps;
    }
  }
  if (opts.format != "json" && opts.format != "md") throw ConfigError("--format", "expected json or md");
  return cfg;
}

Json validation_section(const SystemConfig& cfg, const std::vector<EvalPoint>& samples) {
  const double tol = cfg.tolerance;
  Json out = Json::object();
  bool pass = true;
  try {
    const ValidationReport r = validate_algebroid(cfg.def, samples, tol);
    out["algebroid"] = Json{{"antisymmetry", r.antisymmetry},
                            {"cyclic", r.cyclic},
                            {"compatibility", r.compatibility},
                            {"pass", r.pass}};
    pass = pass && r.pass;
  } catch (const Error& e) {
    out["algebroid"] = Json{{"error", e.what()}, {"pass", false}};
    pass = false;
  }

  if (cfg.lagrangian) {
    Json metric = Json::object();
    double min_det = INFINITY, max_cond = 0.0;
    try {
      for (const auto& p : samples) {
        const FiberMetric g = fiber_metric(cfg.def, *cfg.lagrangian, p);
        require_regular(g.g, p, "fiber metric");
        min_det = std::min(min_det, std::abs(g.determinant));
        max_cond = std::max(max_cond, g.condition);
      }
      metric["min_abs_determinant"] = min_det;
      metric["max_condition"] = max_cond;
      metric["pass"] = true;
    } catch (const Error& e) {
      metric["error"] = e.what();
      metric["pass"] = false;
      pass = false;
    }
    out["fiber_metric"] = metric;
  }

  if (cfg.lagrangian && cfg.semispray) {
    // the configured semispray must agree with the one derived from L
    Json cons = Json::object();
    try {
      const Semispray given = Semispray::from_expressions(*cfg.semispray);
      const Semispray derived = canonical_semispray(cfg.def, *cfg.lagrangian);
      double r = 0.0;
      for (const auto& p : samples) {
        const Frame frame(cfg.def, p, derived.order_loss());
        const JetVector a = given.components(frame), b = derived.components(frame);
        for (int k = 0; k < cfg.def.m; ++k) r = std::max(r, std::abs(a[k].value() - b[k].value()));
      }
      cons["max_residual"] = r;
      cons["pass"] = r <= tol;
      pass = pass && r <= tol;
    } catch (const Error& e) {
      cons["error"] = e.what();
      cons["pass"] = false;
      pass = false;
    }
    out["semispray_consistency"] = cons;
  }
  out["pass"] = pass;
  return out;
}

Json spray_section(const SystemConfig& cfg, const std::vector<EvalPoint>& samples) {
  const SprayTestReport r = spray_test(cfg.def, cfg.spray(), samples, cfg.tolerance);
  return Json{{"euler_residual", r.euler_residual}, {"bracket_residual", r.bracket_residual}, {"pass", r.pass}};
}

Json geometry_section(const SystemConfig& cfg, const EvalPoint& p) {
  if (static_cast<int>(p.x.size()) != cfg.def.n || static_cast<int>(p.y.size()) != cfg.def.m)
    throw ConfigError("/point", "point dimensions do not match the system");
  if (max_abs(p.y) < cfg.samples.y_magnitude.first)
    throw ConfigError("/point", "fiber coordinates lie inside the excluded zero-section band |y| < " +
                                    std::to_string(cfg.samples.y_magnitude.first));
  const Semispray s = cfg.spray();
  const Connection n = cfg.nonlinear_connection();
  const GeometryFrame gf = geometry_frame(cfg.def, s, n, p);

  Json out{{"point", point_json(p)}, {"connection", n.is_canonical() ? "canonical" : "user"}};
  out["S"] = gf.S;
  out["N"] = mat(gf.N);
  out["curvature"] = gf.curvature;
  out["jacobi"] = mat(gf.jacobi);
  out["F"] = mat(gf.F);
  out["berwald"] = gf.berwald;

  Json ids{{"phi_vs_iS_omega", gf.phi_vs_iS_omega},
           {"F_squared_plus_id", gf.F_squared_plus_id},
           {"jacobi_vs_bracket", gf.jacobi_vs_bracket}};
  double worst = std::max({gf.phi_vs_iS_omega, gf.F_squared_plus_id, gf.jacobi_vs_bracket});
  if (n.is_canonical()) {
    ids["nabla_J"] = gf.nabla_J;
    worst = std::max(worst, gf.nabla_J);
    const GeometryOracle o = bracket_oracle(cfg.def, s, p);
    ids["N_vs_minus_LS_J"] = (gf.N - o.N).cwiseAbs().maxCoeff();
    worst = std::max(worst, ids["N_vs_minus_LS_J"].get<double>());
  }
  ids["tol"] = kIdentityTol;
  ids["pass"] = worst <= kIdentityTol;
  out["identities"] = ids;
  out["pass"] = worst <= kIdentityTol;
  return out;
}

Json reference_section(const SystemConfig& cfg, const std::vector<EvalPoint>& samples) {
  Json out = Json::object();
  Json entries = Json::array();
  const auto& refs = cfg.reference.entries;
  if (refs.empty()) {
    out["entries"] = entries;
    out["discrepancies"] = 0;
    return out;
  }
  const Semispray s = cfg.spray();
  const Connection n = cfg.nonlinear_connection();
  std::vector<double> printed_dev(refs.size(), 0.0), oracle_dev(refs.size(), 0.0);
  for (const auto& p : samples) {
    const Geometry g(cfg.def, s, n, p);
    const auto r3 = g.curvature();
    const auto r2 = g.jacobi();
    std::optional<GeometryOracle> oracle;
    if (n.is_canonical()) oracle = bracket_oracle(cfg.def, s, p);
    for (std::size_t k = 0; k < refs.size(); ++k) {
      const auto& e = refs[k];
      const auto& i = e.indices;
      double computed = 0.0;
      std::optional<double> from_oracle;
      if (e.quantity == "S") {
        computed = g.S()[i[0] - 1].value();
      } else if (e.quantity == "N") {
        computed = g.N()[i[0] - 1][i[1] - 1].value();
        if (oracle) from_oracle = oracle->N(i[0] - 1, i[1] - 1);
      } else if (e.quantity == "curvature") {
        computed = r3[i[0] - 1][i[1] - 1][i[2] - 1].value();
        if (oracle) from_oracle = oracle->R3[i[0] - 1][i[1] - 1][i[2] - 1];
      } else {
        // jacobi entries are written R_b^a with indices [b, a]
        computed = r2[i[0] - 1][i[1] - 1].value();
        if (oracle) from_oracle = oracle->R2(i[0] - 1, i[1] - 1);
      }
      printed_dev[k] = std::max(printed_dev[k], std::abs(computed - eval_value(e.expr, p)));
      if (from_oracle) oracle_dev[k] = std::max(oracle_dev[k], std::abs(computed - *from_oracle));
    }
  }
  int discrepancies = 0;
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const bool agrees = printed_dev[k] <= cfg.tolerance;
    if (!agrees) ++discrepancies;
    Json e{{"quantity", refs[k].quantity}, {"indices", refs[k].indices}, {"printed", refs[k].expr.str()},
           {"max_deviation", printed_dev[k]}, {"agrees", agrees}};
    if (n.is_canonical()) e["oracle_deviation"] = oracle_dev[k];
    entries.push_back(std::move(e));
  }
  out["entries"] = entries;
  out["discrepancies"] = discrepancies;
  return out;
}

Json candidate_section(const SystemConfig& cfg, const Candidate& c, const std::vector<EvalPoint>& samples) {
  const double tol = cfg.tolerance;
  Json out{{"name", c.name}, {"type", to_string(c.type)}};
  try {
    const Semispray s = cfg.spray();
    switch (c.type) {
      case Candidate::Type::BaseSection: {
        const BaseSection b = BaseSection::from(cfg.def, c.components);
        std::string label = "(";
        for (std::size_t k = 0; k < c.components.size(); ++k) label += (k ? ", " : "") + c.components[k].str();
        out["section"] = label + ")";
        out["check"] = "lie";
        const SymmetryVerdict lie = lie_symmetry_check(cfg.def, s, b, samples, tol);
        out["max_residual"] = lie.max_residual;
        out["residuals"] = verdict_json(lie)["details"];
        out["jacobi_field_agrees"] = (lie.detail("jacobi_field") <= tol) == lie.pass;
        std::optional<SymmetryVerdict> dyn, newt, cartan;
        out["profile"] = section_profile(cfg, s, complete_lift_field(b), samples, dyn, newt, cartan);
        out["per_sample"] = per_sample(lie.per_sample);
        finish_candidate(out, c, lie.pass);
        break;
      }
      case Candidate::Type::ProlongationSection:
      case Candidate::Type::Newtonoid: {
        const bool newtonoid = c.type == Candidate::Type::Newtonoid;
        out["section"] = newtonoid ? "completion of " + section_label(c) : section_label(c);
        out["check"] = newtonoid ? "newtonoid" : c.check;
        std::optional<SymmetryVerdict> dyn, newt, cartan;
        out["profile"] = section_profile(cfg, s, candidate_field(cfg, c), samples, dyn, newt, cartan);
        const SymmetryVerdict& primary =
            newtonoid || c.check == "newtonoid" ? *newt : (c.check == "cartan" ? *cartan : *dyn);
        out["max_residual"] = primary.max_residual;
        out["residuals"] = verdict_json(primary)["details"];
        out["per_sample"] = per_sample(primary.per_sample);
        finish_candidate(out, c, primary.pass);
        break;
      }
      case Candidate::Type::ConservedFunction: {
        out["f"] = c.f->str();
        out["check"] = "conservation";
        const ConservedQuantity q = conservation_check(cfg.def, s, scalar_field(*c.f), samples, tol, *c.f);
        out["max_residual"] = q.sdot_max;
        out["per_sample"] = per_sample(q.per_sample);
        finish_candidate(out, c, q.pass);
        break;
      }
      case Candidate::Type::ExactCartan: {
        out["section"] = section_label(c);
        out["f"] = c.f->str();
        out["check"] = "exact_cartan";
        const ExactCartanResult r =
            conservation_from_cartan(cfg.def, *cfg.lagrangian, candidate_field(cfg, c), *c.f, samples, tol);
        out["conserved"] = "(" + c.f->str() + ") - theta_L(A)";
        const double worst = std::max({r.cartan.max_residual, r.witness_residual, r.conserved.sdot_max,
                                       r.reconstruction_error, r.reconstruction_cartan});
        out["max_residual"] = worst;
        out["residuals"] = Json{{"cartan", r.cartan.max_residual},
                                {"witness", r.witness_residual},
                                {"conserved_sdot", r.conserved.sdot_max},
                                {"reconstruction_error", r.reconstruction_error},
                                {"reconstruction_cartan", r.reconstruction_cartan}};
        out["per_sample"] = per_sample(r.conserved.per_sample);
        finish_candidate(out, c, worst <= tol);
        break;
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    out["error"] = e.what();
    finish_candidate(out, c, false);
  }
  return out;
}

Json symmetry_section(const SystemConfig& cfg, const std::vector<EvalPoint>& samples) {
  Json list = Json::array();
  bool pass = true;
  for (const auto& c : cfg.candidates) {
    Json r = candidate_section(cfg, c, samples);
    pass = pass && (r.contains("as_expected") ? r["as_expected"].get<bool>() : r["pass"].get<bool>());
    list.push_back(std::move(r));
  }
  return Json{{"tolerance", cfg.tolerance}, {"candidates", list}, {"pass", pass}};
}

Json integration_section(const SystemConfig& cfg, const IntegrateSpec& spec) {
  const Trajectory t =
      integrate_sode(cfg.def, cfg.spray(), spec.x0, spec.y0, spec.dt, spec.steps, cfg.lagrangian);
  Json out{{"x0", spec.x0}, {"y0", spec.y0}, {"dt", spec.dt}, {"steps", spec.steps},
           {"steps_completed", static_cast<int>(t.states.size()) - 1}};
  out["final"] = point_json(t.states.back());
  bool pass = !t.error.has_value();
  if (cfg.lagrangian) {
    out["energy_drift"] = t.energy_drift();
    out["drift_tol"] = spec.drift_tol;
    pass = pass && t.energy_drift() <= spec.drift_tol;
  }
  if (t.error) out["error"] = *t.error;
  out["pass"] = pass;
  return out;
}

Json full_report(const SystemConfig& cfg) {
  const auto samples = cfg.sample_points();
  Json system{{"name", cfg.name},
              {"base_dim", cfg.def.n},
              {"fiber_rank", cfg.def.m},
              {"base_coords", cfg.def.base_coords},
              {"fiber_coords", cfg.def.fiber_coords}};
  if (cfg.lagrangian) system["lagrangian"] = cfg.lagrangian->str();
  system["semispray"] = cfg.semispray ? "configured" : "canonical";
  system["connection"] = cfg.connection ? "user" : "canonical";

  Json out{{"tool", "algmech"}, {"report_version", 1}, {"system", system}};
  out["settings"] = Json{{"seed", cfg.samples.seed}, {"sample_count", cfg.samples.count}, {"tolerance", cfg.tolerance}};
  Json pts = Json::array();
  for (const auto& p : samples) pts.push_back(point_json(p));
  out["samples"] = pts;

  Json validation = validation_section(cfg, samples);
  const bool valid = validation["pass"].get<bool>();
  out["validation"] = validation;
  bool pass = valid;
  if (valid) {
    out["spray"] = spray_section(cfg, samples);
    Json geometry = geometry_section(cfg, cfg.point ? *cfg.point : samples.front());
    pass = pass && geometry["pass"].get<bool>();
    out["geometry"] = geometry;
    out["reference"] = reference_section(cfg, samples);
    Json symmetry = symmetry_section(cfg, samples);
    pass = pass && symmetry["pass"].get<bool>();
    out["symmetry"] = symmetry;
    if (cfg.integrate) {
      Json integration = integration_section(cfg, *cfg.integrate);
      pass = pass && integration["pass"].get<bool>();
      out["integration"] = integration;
    }
  }
  out["pass"] = pass;
  return out;
}

// ---------------------------------------------------------------- output

namespace {

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) x = 0.0;  // drop the sign of zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

std::string scalar(const Json& j) {
  if (j.is_number_float()) return number(j.get<double>());
  return j.dump();
}

void write_value(std::ostream& os, const Json& j, int indent) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(k).dump() << ": ";
      write_value(os, v, indent + 2);
    }
    os << "\n" << std::string(indent, ' ') << "}";
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) {
      return is_scalar(e) || (e.is_array() && std::all_of(e.begin(), e.end(), is_scalar));
    });
    if (flat) {
      os << "[";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ", ";
        if (is_scalar(j[k])) {
          os << scalar(j[k]);
        } else {
          os << "[";
          for (std::size_t q = 0; q < j[k].size(); ++q) os << (q ? ", " : "") << scalar(j[k][q]);
          os << "]";
        }
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) os << ",\n";
      os << pad;
      write_value(os, j[k], indent + 2);
    }
    os << "\n" << std::string(indent, ' ') << "]";
  } else {
    os << scalar(j);
  }
}

std::string inline_value(const Json& j) {
  if (is_scalar(j)) return j.is_string() ? j.get<std::string>() : scalar(j);
  std::string s = "[";
  for (std::size_t k = 0; k < j.size(); ++k) s += (k ? ", " : "") + inline_value(j[k]);
  return s + "]";
}

// One row per entry with its scalar members; nested members follow per row.
void write_object(std::ostream& os, const Json& j, int level);

void write_table(std::ostream& os, const Json& rows, int level) {
  std::vector<std::string> cols;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items())
      if (!v.is_object() && k != "per_sample" && std::find(cols.begin(), cols.end(), k) == cols.end())
        cols.push_back(k);
  os << "|";
  for (const auto& c : cols) os << " " << c << " |";
  os << "\n|";
  for (std::size_t k = 0; k < cols.size(); ++k) os << "---|";
  os << "\n";
  for (const auto& r : rows) {
    os << "|";
    for (const auto& c : cols) os << " " << (r.contains(c) ? inline_value(r[c]) : "") << " |";
    os << "\n";
  }
  os << "\n";
  for (const auto& r : rows) {
    Json nested = Json::object();
    for (const auto& [k, v] : r.items())
      if (v.is_object()) nested[k] = v;
    if (nested.empty()) continue;
    os << std::string(std::min(level, 6), '#') << " " << (r.contains("name") ? inline_value(r["name"]) : "entry") << "\n\n";
    write_object(os, nested, level + 1);
  }
}

void write_object(std::ostream& os, const Json& j, int level) {
  std::vector<std::pair<std::string, const Json*>> nested;
  bool any = false;
  for (const auto& [k, v] : j.items()) {
    if (k == "samples" || k == "per_sample") continue;
    if (v.is_object() || (v.is_array() && !v.empty() && v[0].is_object())) {
      nested.emplace_back(k, &v);
      continue;
    }
    os << "- **" << k << "**: " << inline_value(v) << "\n";
    any = true;
  }
  if (any) os << "\n";
  for (const auto& [k, v] : nested) {
    os << std::string(std::min(level, 6), '#') << " " << k << "\n\n";
    if (v->is_object()) {
      write_object(os, *v, level + 1);
    } else {
      write_table(os, *v, level + 1);
    }
  }
}

int emit(const RunOptions& opts, std::ostream& out, const Json& j, const std::string& title) {
  if (opts.format == "json") {
    write_json(out, j);
  } else {
    write_markdown(out, j, title);
  }
  return j["pass"].get<bool>() ? kExitPass : kExitFail;
}

}  // namespace

void write_json(std::ostream& os, const Json& j) {
  write_value(os, j, 0);
  os << "\n";
}

void write_markdown(std::ostream& os, const Json& j, const std::string& title) {
  os << "# " << title << "\n\n";
  write_object(os, j, 2);
}

int cmd_validate(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out) {
  return emit(opts, out, validation_section(cfg, cfg.sample_points()), "validate: " + cfg.name);
}

int cmd_geometry(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out) {
  if (!cfg.point) throw ConfigError("--at", "no point given (use --at or the config's point)");
  return emit(opts, out, geometry_section(cfg, *cfg.point), "geometry: " + cfg.name);
}

int cmd_spray_check(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out) {
  return emit(opts, out, spray_section(cfg, cfg.sample_points()), "spray-check: " + cfg.name);
}

int cmd_symmetry(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out) {
  return emit(opts, out, symmetry_section(cfg, cfg.sample_points()), "symmetry: " + cfg.name);
}

int cmd_integrate(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out) {
  IntegrateSpec spec = cfg.integrate.value_or(IntegrateSpec{});
  if (opts.at) {
    spec.x0 = cfg.point->x;
    spec.y0 = cfg.point->y;
  }
  if (spec.x0.empty()) throw ConfigError("/integrate/x0", "no initial state (use --at or the config's integrate)");
  const Trajectory t = integrate_sode(cfg.def, cfg.spray(), spec.x0, spec.y0, spec.dt, spec.steps, cfg.lagrangian);
  write_csv(out, t);
  if (t.error) return kExitFail;
  return (!cfg.lagrangian || t.energy_drift() <= spec.drift_tol) ? kExitPass : kExitFail;
}

int cmd_report(const SystemConfig& cfg, const RunOptions& opts, std::ostream& out) {
  return emit(opts, out, full_report(cfg), "report: " + cfg.name);
}

std::optional<std::string> builtin_example(const std::string& name) {
  for (const auto& e : kExamples)
    if (name == e.name) return std::string(e.text);
  return std::nullopt;
}

int cmd_example(const std::string& name, std::ostream& out) {
  const auto text = builtin_example(name);
  if (!text) return kExitUsage;
  out << *text;
  return kExitPass;
}

}  // namespace algmech
