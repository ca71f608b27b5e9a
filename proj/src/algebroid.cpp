#include "algmech/algebroid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "algmech/errors.hpp"

namespace algmech {

std::vector<std::string> AlgebroidDef::coords() const {
  std::vector<std::string> all(base_coords);
  all.insert(all.end(), fiber_coords.begin(), fiber_coords.end());
  return all;
}

Expr AlgebroidDef::parse(const std::string& source) const {
  const auto all = coords();
  return parse_expr(source, all);
}

AlgebroidDef AlgebroidDef::empty(std::vector<std::string> base_coords, std::vector<std::string> fiber_coords) {
  AlgebroidDef def;
  def.n = static_cast<int>(base_coords.size());
  def.m = static_cast<int>(fiber_coords.size());
  def.base_coords = std::move(base_coords);
  def.fiber_coords = std::move(fiber_coords);
  def.anchor.assign(def.n, std::vector<Expr>(def.m));
  def.structure.assign(def.m, std::vector<std::vector<Expr>>(def.m, std::vector<Expr>(def.m)));
  return def;
}

BaseSection BaseSection::from(const AlgebroidDef& def, std::vector<Expr> components) {
  BaseSection s;
  s.components = std::move(components);
  s.x_only = std::all_of(s.components.begin(), s.components.end(), [&](const Expr& e) {
    const auto vars = e.variables();
    return std::none_of(vars.begin(), vars.end(), [&](int v) { return v >= def.n; });
  });
  return s;
}

void require_base_only(const AlgebroidDef& def, const Expr& e, const char* what) {
  for (int v : e.variables()) {
    if (v >= def.n) {
      throw FiberDependenceError(std::string(what) + " depends on fiber coordinate '" +
                                 def.fiber_coords[v - def.n] + "'");
    }
  }
}

Frame::Frame(const AlgebroidDef& def, const EvalPoint& p, int order)
    : def_(&def), point_(p), order_(order), space_(&JetSpace::get(def.n + def.m, order)) {
  if (static_cast<int>(p.x.size()) != def.n || static_cast<int>(p.y.size()) != def.m) {
    throw ConfigError("", "point has " + std::to_string(p.x.size()) + "+" + std::to_string(p.y.size()) +
                              " coordinates, expected " + std::to_string(def.n) + "+" + std::to_string(def.m));
  }
  const int d = def.n + def.m;
  coords_.reserve(d);
  for (int k = 0; k < d; ++k) coords_.push_back(Jet::variable(*space_, order, k, p[k]));

  sigma_.reserve(static_cast<std::size_t>(def.n) * def.m);
  for (int i = 0; i < def.n; ++i) {
    for (int a = 0; a < def.m; ++a) {
      sigma_.push_back(eval(def.anchor[i][a]));
      sigma_zero_.push_back(def.anchor[i][a].is_zero());
    }
  }
  L_.reserve(static_cast<std::size_t>(def.m) * def.m * def.m);
  for (int a = 0; a < def.m; ++a) {
    for (int b = 0; b < def.m; ++b) {
      for (int g = 0; g < def.m; ++g) {
        L_.push_back(eval(def.structure[a][b][g]));
        L_zero_.push_back(def.structure[a][b][g].is_zero());
      }
    }
  }
}

Jet Frame::eval(const Expr& e) const {
  if (e.is_number()) return constant(e.root().number);
  if (coords_.empty()) return constant(eval_value(e, point_));
  return eval_jet(e, coords_);
}

JetVector Frame::eval(const std::vector<Expr>& es) const {
  JetVector out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(eval(e));
  return out;
}

Jet Frame::anchor_derivative(int alpha, const Jet& f) const {
  Jet out = Jet::constant(*space_, std::max(f.order() - 1, 0), 0.0);
  if (f.order() == 0) return f.derivative(0);  // throws OrderError
  for (int i = 0; i < def_->n; ++i) {
    if (sigma_zero(i, alpha)) continue;
    out += sigma(i, alpha) * f.derivative(i);
  }
  return out;
}

Jet Frame::anchor_apply(const JetVector& rho, const Jet& f) const {
  Jet out = Jet::constant(*space_, std::max(f.order() - 1, 0), 0.0);
  for (int a = 0; a < def_->m; ++a) out += rho[a] * anchor_derivative(a, f);
  return out;
}

double ValidationReport::max_residual() const { return std::max({antisymmetry, cyclic, compatibility}); }

namespace {

std::string describe(const EvalPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << "x=(";
  for (std::size_t i = 0; i < p.x.size(); ++i) os << (i ? "," : "") << p.x[i];
  os << ") y=(";
  for (std::size_t i = 0; i < p.y.size(); ++i) os << (i ? "," : "") << p.y[i];
  os << ")";
  return os.str();
}

}  // namespace

ValidationReport validate_algebroid(const AlgebroidDef& def, const std::vector<EvalPoint>& samples, double tol) {
  if (samples.empty()) throw ConfigError("/samples", "validation needs at least one sample");
  ValidationReport report;
  report.tol = tol;
  const int m = def.m, n = def.n;
  for (const auto& p : samples) {
    try {
      const Frame f(def, p, 1);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int g = 0; g < m; ++g)
            report.antisymmetry =
                std::max(report.antisymmetry, std::abs(f.L(a, b, g).value() + f.L(b, a, g).value()));

      // sum over cyclic (a,b,c) of sigma_a(L_bc^d) + L_ae^d L_bc^e
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          for (int c = 0; c < m; ++c) {
            const int cyc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
            for (int d = 0; d < m; ++d) {
              double r = 0.0;
              for (const auto& t : cyc) {
                r += f.anchor_derivative(t[0], f.L(t[1], t[2], d)).value();
                for (int e = 0; e < m; ++e) r += f.L(t[0], e, d).value() * f.L(t[1], t[2], e).value();
              }
              report.cyclic = std::max(report.cyclic, std::abs(r));
            }
          }
        }
      }

      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          for (int i = 0; i < n; ++i) {
            double r = f.anchor_derivative(a, f.sigma(i, b)).value() - f.anchor_derivative(b, f.sigma(i, a)).value();
            for (int g = 0; g < m; ++g) r -= f.sigma(i, g).value() * f.L(a, b, g).value();
            report.compatibility = std::max(report.compatibility, std::abs(r));
          }
        }
      }
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " at " + describe(p), e.subexpression());
    }
  }
  report.pass = report.max_residual() <= tol;
  return report;
}

double anchor_apply(const AlgebroidDef& def, const BaseSection& s, const Expr& f, const EvalPoint& p) {
  require_base_only(def, f, "function");
  for (const auto& c : s.components) require_base_only(def, c, "section");
  const Frame frame(def, p, 1);
  return frame.anchor_apply(frame.eval(s.components), frame.eval(f)).value();
}

JetVector bracket_base(const Frame& frame, const JetVector& r, const JetVector& s) {
  const int m = frame.m();
  JetVector out;
  out.reserve(m);
  for (int g = 0; g < m; ++g) {
    Jet v = frame.anchor_apply(r, s[g]) - frame.anchor_apply(s, r[g]);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (!frame.L_zero(a, b, g)) v += r[a] * s[b] * frame.L(a, b, g);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<double> bracket_base_sections(const AlgebroidDef& def, const BaseSection& r, const BaseSection& s,
                                          const EvalPoint& p) {
  for (const auto& c : r.components) require_base_only(def, c, "section");
  for (const auto& c : s.components) require_base_only(def, c, "section");
  const Frame frame(def, p, 1);
  return values(bracket_base(frame, frame.eval(r.components), frame.eval(s.components)));
}

std::vector<double> exterior_derivative_function(const AlgebroidDef& def, const Expr& f, const EvalPoint& p) {
  require_base_only(def, f, "function");
  const Frame frame(def, p, 1);
  const Jet fj = frame.eval(f);
  std::vector<double> out(def.m);
  for (int a = 0; a < def.m; ++a) out[a] = frame.anchor_derivative(a, fj).value();
  return out;
}

JetMatrix exterior_derivative_one_section(const Frame& frame, const JetVector& theta) {
  const int m = frame.m();
  JetMatrix out(m, JetVector(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Jet v = frame.anchor_derivative(a, theta[b]) - frame.anchor_derivative(b, theta[a]);
      for (int g = 0; g < m; ++g)
        if (!frame.L_zero(a, b, g)) v -= theta[g] * frame.L(a, b, g);
      out[a][b] = std::move(v);
    }
  }
  return out;
}

SectionJet lift_section(const Frame& frame, const BaseSection& s, LiftKind kind) {
  if (!s.x_only) throw FiberDependenceError("lift of a section that depends on fiber coordinates");
  const int m = frame.m();
  const JetVector rho = frame.eval(s.components);
  SectionJet out;
  if (kind == LiftKind::Vertical) {
    out.X.assign(m, frame.zero());
    out.V = rho;
    return out;
  }
  out.X = rho;
  out.V.reserve(m);
  for (int a = 0; a < m; ++a) {
    Jet v = Jet::constant(frame.space(), std::max(frame.order() - 1, 0), 0.0);
    for (int e = 0; e < m; ++e) {
      Jet coeff = frame.anchor_derivative(e, rho[a]);
      for (int b = 0; b < m; ++b)
        if (!frame.L_zero(b, e, a)) coeff -= frame.L(b, e, a) * rho[b];
      v += coeff * frame.y(e);
    }
    out.V.push_back(std::move(v));
  }
  return out;
}

std::vector<double> lift_section(const AlgebroidDef& def, const BaseSection& s, LiftKind kind, const EvalPoint& p) {
  const Frame frame(def, p, 1);
  const SectionJet lift = lift_section(frame, s, kind);
  std::vector<double> out = values(lift.X);
  const auto v = values(lift.V);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace algmech
