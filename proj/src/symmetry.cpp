#include "algmech/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "algmech/errors.hpp"

namespace algmech {

namespace {

Geometry geometry_at(const AlgebroidDef& def, const Semispray& s, const EvalPoint& p, int extra = 0) {
  return Geometry(def, s, Connection::canonical(), p, std::max(Frame::kDefaultOrder, s.order_loss() + 2) + extra);
}

double max_abs(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Accumulates per-sample residuals and named maxima into a verdict.
class VerdictBuilder {
 public:
  VerdictBuilder(SymmetryKind kind, double tol, std::vector<std::string> details) {
    verdict_.kind = kind;
    verdict_.tol = tol;
    for (auto& d : details) verdict_.details.emplace_back(std::move(d), 0.0);
  }
  void sample(const EvalPoint& p, std::vector<double> residual) {
    verdict_.max_residual = std::max(verdict_.max_residual, max_abs(residual));
    verdict_.per_sample.push_back({p, std::move(residual)});
  }
  void detail(std::size_t k, double value) {
    verdict_.details[k].second = std::max(verdict_.details[k].second, std::abs(value));
  }
  SymmetryVerdict finish() {
    verdict_.pass = verdict_.max_residual <= verdict_.tol;
    return std::move(verdict_);
  }

 private:
  SymmetryVerdict verdict_;
};

// nabla X^a = S(X^a) + (N_b^a + y^e L_eb^a) X^b on horizontal coefficients.
JetVector nabla_horizontal(const Geometry& g, const JetVector& x) {
  const Frame& f = g.frame();
  const int m = g.m();
  JetVector out(m);
  for (int a = 0; a < m; ++a) {
    Jet t = g.S_of(x[a]);
    for (int b = 0; b < m; ++b) {
      Jet k = g.N()[b][a];
      for (int e = 0; e < m; ++e)
        if (!f.L_zero(e, b, a)) k += f.y(e) * f.L(e, b, a);
      t += k * x[b];
    }
    out[a] = std::move(t);
  }
  return out;
}

// Cartan residuals of A at one frame: (max |(L_A omega)(B, C)|, |sigma^1(A) E_L|).
std::pair<double, double> cartan_residuals(const Frame& frame, const LagrangianJets& lj, const SectionJet& a) {
  const CartanForm omega(frame, lj);
  const int k2 = 2 * frame.m();
  std::vector<SectionJet> basis, brackets;
  for (int k = 0; k < k2; ++k) {
    basis.push_back(basis_section(frame, k));
    brackets.push_back(bracket(frame, a, basis.back()));
  }
  const JetVector field = anchor_field(frame, a);
  double r1 = 0.0;
  for (int k = 0; k < k2; ++k) {
    for (int l = k + 1; l < k2; ++l) {
      const Jet r = directional(field, omega(basis[k], basis[l])) - omega(brackets[k], basis[l]) -
                    omega(basis[k], brackets[l]);
      r1 = std::max(r1, std::abs(r.value()));
    }
  }
  const double r2 = std::abs(directional(field, energy(frame, lj)).value());
  return {r1, r2};
}

}  // namespace

SectionField section_field(const ProlongationSection& a) {
  return [a](const Geometry& g) { return a.at(g.frame()); };
}

SectionField semispray_field() {
  return [](const Geometry& g) { return g.spray(); };
}

SectionField euler_field() {
  return [](const Geometry& g) { return euler_section(g.frame()); };
}

SectionField complete_lift_field(const BaseSection& s) {
  if (!s.x_only) throw FiberDependenceError("complete lift of a section that depends on fiber coordinates");
  return [s](const Geometry& g) { return lift_section(g.frame(), s, LiftKind::Complete); };
}

SectionField vertical_lift_field(const BaseSection& s) {
  if (!s.x_only) throw FiberDependenceError("vertical lift of a section that depends on fiber coordinates");
  return [s](const Geometry& g) { return lift_section(g.frame(), s, LiftKind::Vertical); };
}

SectionField newtonoid_completion(std::vector<Expr> x_components) {
  return [x = std::move(x_components)](const Geometry& g) {
    const Frame& f = g.frame();
    const int m = g.m();
    SectionJet out;
    out.X = f.eval(x);
    for (int a = 0; a < m; ++a) {
      Jet y = g.S_of(out.X[a]);
      for (int e = 0; e < m; ++e)
        for (int b = 0; b < m; ++b)
          if (!f.L_zero(e, b, a)) y += f.y(e) * f.L(e, b, a) * out.X[b];
      out.V.push_back(std::move(y));
    }
    return out;
  };
}

SectionField scaled_field(ScalarField f, SectionField a) {
  return [f = std::move(f), a = std::move(a)](const Geometry& g) { return f(g) * a(g); };
}

ScalarField scalar_field(const Expr& f) {
  return [f](const Geometry& g) { return g.frame().eval(f); };
}

ScalarField energy_field(const Expr& lagrangian) {
  return [lagrangian](const Geometry& g) { return energy(g.frame(), LagrangianJets(g.frame(), lagrangian)); };
}

const char* to_string(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::Dynamical: return "dynamical";
    case SymmetryKind::Lie: return "lie";
    case SymmetryKind::Newtonoid: return "newtonoid";
    case SymmetryKind::Cartan: return "cartan";
  }
  return "";
}

double SymmetryVerdict::detail(const std::string& name) const {
  for (const auto& [k, v] : details)
    if (k == name) return v;
  throw Error("no residual named '" + name + "'");
}

SymmetryVerdict dynamical_symmetry_check(const AlgebroidDef& def, const Semispray& s, const SectionField& a,
                                         const std::vector<EvalPoint>& samples, double tol) {
  VerdictBuilder vb(SymmetryKind::Dynamical, tol, {"velocity_relation", "acceleration_relation"});
  for (const auto& p : samples) {
    const Geometry g = geometry_at(def, s, p);
    const SectionJet aj = a(g);
    vb.sample(p, to_vector(values(bracket(g.frame(), g.spray(), aj))));
    const JetVector field = anchor_field(g.frame(), aj);
    for (int al = 0; al < def.m; ++al) {
      Jet velocity_relation = aj.V[al] - g.S_of(aj.X[al]);
      for (int e = 0; e < def.m; ++e)
        for (int b = 0; b < def.m; ++b)
          if (!g.frame().L_zero(e, b, al)) velocity_relation -= g.frame().y(e) * g.frame().L(e, b, al) * aj.X[b];
      vb.detail(0, velocity_relation.value());
      vb.detail(1, (g.S_of(aj.V[al]) - directional(field, g.S()[al])).value());
    }
  }
  return vb.finish();
}

SymmetryVerdict newtonoid_check(const AlgebroidDef& def, const Semispray& s, const SectionField& a,
                                const std::vector<EvalPoint>& samples, double tol) {
  VerdictBuilder vb(SymmetryKind::Newtonoid, tol, {"vertical_criterion"});
  for (const auto& p : samples) {
    const Geometry g = geometry_at(def, s, p);
    const SectionJet aj = a(g);
    vb.sample(p, values(bracket(g.frame(), g.spray(), aj).X));
    const Eigen::VectorXd vertical_criterion = values(g.v(aj)) - values(tangent_structure(g.nabla(aj)));
    vb.detail(0, vertical_criterion.cwiseAbs().maxCoeff());
  }
  return vb.finish();
}

JetVector invariant_equation_residual(const Geometry& g, const SectionJet& a) {
  const JetVector twice = nabla_horizontal(g, nabla_horizontal(g, a.X));
  const JetMatrix r = g.jacobi();
  JetVector out(g.m());
  for (int al = 0; al < g.m(); ++al) {
    Jet t = twice[al];
    for (int b = 0; b < g.m(); ++b) t += r[b][al] * a.X[b];
    out[al] = std::move(t);
  }
  return out;
}

JetVector invariant_equation_oracle(const Geometry& g, const SectionJet& a) {
  const SectionJet inner = bracket(g.frame(), g.spray(), a);
  JetVector out = bracket(g.frame(), g.spray(), inner).X;
  for (auto& c : out) c = -c;
  return out;
}

std::vector<double> invariant_equation_residual(const AlgebroidDef& def, const Semispray& s, const SectionField& a,
                                                const EvalPoint& p) {
  const Geometry g = geometry_at(def, s, p);
  return values(invariant_equation_residual(g, a(g)));
}

SymmetryVerdict lie_symmetry_check(const AlgebroidDef& def, const Semispray& s, const BaseSection& xtilde,
                                   const std::vector<EvalPoint>& samples, double tol) {
  const SectionField lift = complete_lift_field(xtilde);
  VerdictBuilder vb(SymmetryKind::Lie, tol, {"pde_x", "pde_v", "jacobi_field"});
  for (const auto& p : samples) {
    // nabla twice through the vertical part costs one order more than the bracket form
    const Geometry g = geometry_at(def, s, p, 1);
    const SectionJet xc = lift(g);
    const SectionJet br = bracket(g.frame(), g.spray(), xc);
    vb.sample(p, to_vector(values(br)));
    vb.detail(0, max_abs(values(br.X)));
    vb.detail(1, max_abs(values(br.V)));
    const SectionJet xv = lift_section(g.frame(), xtilde, LiftKind::Vertical);
    const Eigen::VectorXd jacobi_field = values(g.nabla(g.nabla(xv))) + values(g.jacobi_tensor()(xc));
    vb.detail(2, jacobi_field.cwiseAbs().maxCoeff());
  }
  return vb.finish();
}

SymmetryVerdict cartan_symmetry_check(const AlgebroidDef& def, const Expr& lagrangian, const SectionField& a,
                                      const std::vector<EvalPoint>& samples, double tol) {
  const Semispray s = canonical_semispray(def, lagrangian);
  VerdictBuilder vb(SymmetryKind::Cartan, tol, {"lie_omega", "lie_energy"});
  for (const auto& p : samples) {
    const Geometry g = geometry_at(def, s, p);
    const LagrangianJets lj(g.frame(), lagrangian);
    const auto [r1, r2] = cartan_residuals(g.frame(), lj, a(g));
    vb.sample(p, {r1, r2});
    vb.detail(0, r1);
    vb.detail(1, r2);
  }
  return vb.finish();
}

ConservedQuantity conservation_check(const AlgebroidDef& def, const Semispray& s, const ScalarField& f,
                                     const std::vector<EvalPoint>& samples, double tol, std::optional<Expr> expr) {
  ConservedQuantity out;
  out.f = std::move(expr);
  out.field = f;
  out.tol = tol;
  for (const auto& p : samples) {
    const Geometry g = geometry_at(def, s, p);
    const double sdot = g.S_of(f(g)).value();
    out.sdot_max = std::max(out.sdot_max, std::abs(sdot));
    out.per_sample.push_back({p, {sdot}});
  }
  out.pass = out.sdot_max <= tol;
  return out;
}

SectionJet converse_cartan_section(const Frame& frame, const LagrangianJets& lj, const Jet& f) {
  const int k2 = 2 * frame.m();
  const CartanForm omega(frame, lj);
  std::vector<SectionJet> basis;
  for (int k = 0; k < k2; ++k) basis.push_back(basis_section(frame, k));
  // sum_a x^a omega(E_a, E_b) = -sigma^1(E_b)(f)
  JetMatrix w(k2, JetVector(k2));
  JetVector rhs(k2);
  Eigen::MatrixXd wv(k2, k2);
  for (int b = 0; b < k2; ++b) {
    for (int a = 0; a < k2; ++a) {
      w[b][a] = omega(basis[a], basis[b]);
      wv(b, a) = w[b][a].value();
    }
    rhs[b] = -anchor_prolongation(frame, basis[b], f);
  }
  require_regular(wv, frame.point(), "symplectic pairing");
  JetVector x;
  if (!solve_linear(w, rhs, x, 0.0)) throw SingularMetricError("symplectic pairing", 0.0);
  SectionJet out;
  out.X.assign(x.begin(), x.begin() + frame.m());
  out.V.assign(x.begin() + frame.m(), x.end());
  return out;
}

ConverseCartan converse_cartan(const AlgebroidDef& def, const Expr& lagrangian, const ScalarField& f,
                               const std::vector<EvalPoint>& samples, double tol) {
  const Semispray s = canonical_semispray(def, lagrangian);
  ConverseCartan out;
  VerdictBuilder vb(SymmetryKind::Cartan, tol, {"lie_omega", "lie_energy"});
  for (const auto& p : samples) {
    const Geometry g = geometry_at(def, s, p);
    const LagrangianJets lj(g.frame(), lagrangian);
    const SectionJet x = converse_cartan_section(g.frame(), lj, f(g));
    out.sections.push_back(values(x));
    const auto [r1, r2] = cartan_residuals(g.frame(), lj, x);
    vb.sample(p, {r1, r2});
    vb.detail(0, r1);
    vb.detail(1, r2);
  }
  out.cartan = vb.finish();
  return out;
}

ExactCartanResult conservation_from_cartan(const AlgebroidDef& def, const Expr& lagrangian, const SectionField& a,
                                           const Expr& f, const std::vector<EvalPoint>& samples, double tol) {
  const Semispray s = canonical_semispray(def, lagrangian);
  ExactCartanResult out;
  out.cartan = cartan_symmetry_check(def, lagrangian, a, samples, tol);

  for (const auto& p : samples) {
    const Geometry g = geometry_at(def, s, p);
    const Frame& frame = g.frame();
    const LagrangianJets lj(frame, lagrangian);
    const SectionJet aj = a(g);
    const Jet fj = frame.eval(f);
    for (int k = 0; k < 2 * def.m; ++k) {
      const SectionJet b = basis_section(frame, k);
      const Jet lie_theta = anchor_prolongation(frame, aj, cartan_one_section(lj, b)) -
                            cartan_one_section(lj, bracket(frame, aj, b));
      const double r = (lie_theta - anchor_prolongation(frame, b, fj)).value();
      out.witness_residual = std::max(out.witness_residual, std::abs(r));
    }
  }
  if (out.witness_residual > tol)
    throw ExactnessError("'" + f.str() + "' does not witness exactness of L_A theta_L (residual " +
                             std::to_string(out.witness_residual) + ")",
                         out.witness_residual);

  const ScalarField conserved = [a, lagrangian, f](const Geometry& g) {
    const LagrangianJets lj(g.frame(), lagrangian);
    return g.frame().eval(f) - cartan_one_section(lj, a(g));
  };
  out.conserved = conservation_check(def, s, conserved, samples, tol);
  out.conserved.provenance = ConservedQuantity::Provenance::FromCartan;

  for (const auto& p : samples) {
    const Geometry g = geometry_at(def, s, p);
    const LagrangianJets lj(g.frame(), lagrangian);
    const SectionJet x = converse_cartan_section(g.frame(), lj, -conserved(g));
    out.reconstruction_error =
        std::max(out.reconstruction_error, (values(x) - values(a(g))).cwiseAbs().maxCoeff());
    const auto [r1, r2] = cartan_residuals(g.frame(), lj, x);
    out.reconstruction_cartan = std::max({out.reconstruction_cartan, r1, r2});
  }
  return out;
}

SectionJet star_product(const Geometry& g, const Jet& f, const SectionJet& a) {
  return f * a + g.S_of(f) * tangent_structure(a);
}

Eigen::VectorXd star_product(const AlgebroidDef& def, const Semispray& s, const Expr& f, const SectionField& a,
                             const EvalPoint& p) {
  const Geometry g = geometry_at(def, s, p);
  return values(star_product(g, g.frame().eval(f), a(g)));
}

}  // namespace algmech
