#include "support.hpp"

#include <algorithm>
#include <cmath>

#include "algmech/app.hpp"

namespace algmech::testing {

System make_system(std::string name, std::vector<std::string> base, std::vector<std::string> fiber,
                   const std::vector<std::vector<std::string>>& anchor, const std::vector<StructureEntry>& structure,
                   const std::string& lagrangian, bool spray) {
  System sys;
  sys.name = std::move(name);
  sys.def = AlgebroidDef::empty(std::move(base), std::move(fiber));
  for (int i = 0; i < sys.def.n; ++i)
    for (int a = 0; a < sys.def.m; ++a) sys.def.anchor[i][a] = sys.def.parse(anchor[i][a]);
  for (const auto& [a, b, c, text] : structure) {
    const Expr e = sys.def.parse(text);
    sys.def.structure[a][b][c] = e;
    sys.def.structure[b][a][c] = -e;
  }
  sys.lagrangian = sys.def.parse(lagrangian);
  sys.spray = spray;
  return sys;
}

SystemConfig driftless_config() { return parse_config(*builtin_example("driftless"), "driftless"); }

System driftless() {
  const SystemConfig cfg = driftless_config();
  System sys;
  sys.name = "driftless";
  sys.def = cfg.def;
  sys.lagrangian = *cfg.lagrangian;
  return sys;
}

System abelian_flat() {
  return make_system("abelian-flat", {"x1", "x2"}, {"y1", "y2"}, {{"1", "0"}, {"0", "1"}}, {},
                     "0.5*(y1^2 + y2^2)", true);
}

System heisenberg() {
  return make_system("heisenberg", {"x1", "x2", "x3"}, {"y1", "y2", "y3"},
                     {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "x1", "1"}}, {{0, 1, 2, "1"}},
                     "0.5*(y1^2 + y2^2 + y3^2)", true);
}

System twisted() {
  return make_system("twisted", {"x1", "x2"}, {"y1", "y2"}, {{"1", "x1^2"}, {"0", "1"}}, {{0, 1, 0, "2*x1"}},
                     "0.5*(y1^2 + (1 + x1^2)*y2^2) + x2*y1 + 0.05*y1^2*y2^2", false);
}

Connection arbitrary_connection(const System& sys) {
  const int m = sys.def.m;
  const auto& c = sys.def.coords();
  std::vector<std::vector<Expr>> n(m, std::vector<Expr>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const std::string& ya = c[sys.def.n + a];
      const std::string& yb = c[sys.def.n + b];
      const std::string& x = c[(a + b) % sys.def.n];
      n[a][b] = sys.def.parse("0.3*" + ya + "*" + yb + " + sin(" + x + ")*" + yb + " + " + std::to_string(a - b) +
                              "*cos(" + ya + ")");
    }
  return Connection::user(std::move(n));
}

std::vector<EvalPoint> samples(const System& sys, int count, std::uint64_t seed) {
  SampleSpec spec;
  spec.count = count;
  spec.seed = seed;
  return generate_samples(sys.def.n, sys.def.m, spec);
}

Expr random_expr(SplitMix64& rng, const AlgebroidDef& def, int depth) {
  const int dim = def.n + def.m;
  const auto coords = def.coords();
  if (depth <= 0 || rng.uniform() < 0.2) {
    if (rng.uniform() < 0.3) return Expr::number(std::round(rng.uniform(-2.0, 2.0) * 4.0) / 4.0);
    const int k = static_cast<int>(rng.next() % static_cast<std::uint64_t>(dim));
    return Expr::variable(k, coords[k]);
  }
  const Expr a = random_expr(rng, def, depth - 1);
  switch (rng.next() % 7) {
    case 0:
      return a + random_expr(rng, def, depth - 1);
    case 1:
      return a - random_expr(rng, def, depth - 1);
    case 2:
      return a * random_expr(rng, def, depth - 1);
    case 3:
      return Expr::unary(Op::Sin, a);
    case 4:
      return Expr::unary(Op::Cos, a);
    case 5:
      return Expr::unary(Op::Exp, Expr::number(0.5) * Expr::unary(Op::Sin, a));
    default:
      return Expr::binary(Op::Divide, Expr::number(1.0), Expr::number(2.0) + Expr::unary(Op::Cos, a));
  }
}

ProlongationSection random_section(SplitMix64& rng, const AlgebroidDef& def, int depth) {
  ProlongationSection s;
  for (int a = 0; a < def.m; ++a) s.X.push_back(random_expr(rng, def, depth));
  for (int a = 0; a < def.m; ++a) s.V.push_back(random_expr(rng, def, depth));
  return s;
}

namespace {

BaseSection base(const System& sys, const std::vector<std::string>& comps) {
  std::vector<Expr> e;
  for (const auto& c : comps) e.push_back(sys.def.parse(c));
  return BaseSection::from(sys.def, std::move(e));
}

std::vector<Expr> exprs(const System& sys, const std::vector<std::string>& comps) {
  std::vector<Expr> e;
  for (const auto& c : comps) e.push_back(sys.def.parse(c));
  return e;
}

ProlongationSection basis_x(const System& sys, int k) {
  ProlongationSection s{std::vector<Expr>(sys.def.m), std::vector<Expr>(sys.def.m)};
  s.X[k] = Expr::number(1.0);
  return s;
}

}  // namespace

std::vector<Candidate> candidate_corpus(const System& sys) {
  std::vector<Candidate> out{
      {"semispray", semispray_field()},
      {"euler", euler_field()},
      {"V1", vertical_lift_field(base(sys, [&] {
         std::vector<std::string> c(sys.def.m, "0");
         c[0] = "1";
         return c;
       }()))},
      {"X1", section_field(basis_x(sys, 0))},
      {"energy_semispray", scaled_field(energy_field(sys.lagrangian), semispray_field())},
  };
  for (auto& [name, b] : base_corpus(sys)) out.push_back({"lift " + name, complete_lift_field(b)});
  if (sys.def.m == 2) {
    out.push_back({"completion (x1*x2, 1)", newtonoid_completion(exprs(sys, {"x1*x2", "1"}))});
  } else {
    out.push_back({"completion (x2, 0, 1)", newtonoid_completion(exprs(sys, {"x2", "0", "1"}))});
  }
  return out;
}

std::vector<std::pair<std::string, BaseSection>> base_corpus(const System& sys) {
  std::vector<std::vector<std::string>> comps;
  if (sys.name == "driftless") {
    comps = {{"1", "0"}, {"0", "1"}, {"x2", "0"}, {"x1", "x3"}};
  } else if (sys.name == "abelian-flat") {
    comps = {{"1", "0"}, {"0", "1"}, {"-x2", "x1"}, {"x1", "0"}, {"x1^2", "0"}, {"sin(x2)", "1"}};
  } else if (sys.name == "heisenberg") {
    comps = {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}, {"x1", "0", "0"}, {"0", "0", "x1^2"}};
  } else {
    comps = {{"1", "0"}, {"0", "1"}, {"x2", "x1"}, {"0", "exp(x1)"}};
  }
  std::vector<std::pair<std::string, BaseSection>> out;
  for (const auto& c : comps) {
    std::string label = "(";
    for (std::size_t k = 0; k < c.size(); ++k) label += (k ? ", " : "") + c[k];
    out.emplace_back(label + ")", base(sys, c));
  }
  return out;
}

EquivalenceStats symmetry_equivalences(const System& sys, const std::vector<EvalPoint>& pts, double tol,
                                       int leibniz_cases, std::uint64_t seed) {
  EquivalenceStats st;
  const Semispray s = sys.semispray();
  for (const auto& c : candidate_corpus(sys)) {
    const SymmetryVerdict dyn = dynamical_symmetry_check(sys.def, s, c.field, pts, tol);
    const SymmetryVerdict newt = newtonoid_check(sys.def, s, c.field, pts, tol);
    double inv = 0.0;
    for (const auto& p : pts) inv = std::max(inv, max_abs(invariant_equation_residual(sys.def, s, c.field, p)));
    ++st.candidates;
    st.dynamical_pass += dyn.pass;
    st.equivalence_agree += dyn.pass == (newt.pass && inv <= tol);
    const SymmetryVerdict cartan = cartan_symmetry_check(sys.def, sys.lagrangian, c.field, pts, tol);
    ++st.cartan_checked;
    st.cartan_pass += cartan.pass;
    st.cartan_implies_dynamical += !cartan.pass || dyn.pass;
  }
  for (const auto& [name, b] : base_corpus(sys)) {
    const SymmetryVerdict lie = lie_symmetry_check(sys.def, s, b, pts, tol);
    ++st.lie_candidates;
    st.lie_pass += lie.pass;
    st.lie_agree += lie.pass == (lie.detail("jacobi_field") <= tol);
  }
  SplitMix64 rng(seed);
  for (const auto& p : pts) {
    const Geometry g(sys.def, s, Connection::canonical(), p, Frame::kDefaultOrder + 1);
    for (int k = 0; k < leibniz_cases; ++k) {
      const Jet f = g.frame().eval(random_expr(rng, sys.def, 2));
      const SectionJet a = random_section(rng, sys.def).at(g.frame());
      const SectionJet lhs = g.nabla(star_product(g, f, a));
      const SectionJet rhs = star_product(g, g.S_of(f), a) + star_product(g, f, g.nabla(a));
      st.star_leibniz = std::max(st.star_leibniz, max_abs(lhs - rhs));
    }
  }
  return st;
}

std::vector<std::string> expression_corpus() {
  return {
      "x1",
      "7",
      "-(u1*u2)",
      "0.5*(u1^2 + u2^2)",
      "u1^2*x1 - 3*x2*u2 + x3",
      "x1^3*u2^4 - x2^2",
      "sin(x1*u1) + cos(x2 - u2)",
      "exp(0.3*x1*u2)",
      "ln(1 + x1^2 + u1^2)",
      "sqrt(2 + sin(x2*u1))",
      "(1 + u1^2)^0.5",
      "(2 + cos(x1))^-3",
      "(1 + x3^2)^(-1.5)",
      "x1/(1.5 + sin(u1*u2))",
      "u2/(1 + x1^2) - x3/(2 + cos(u1))",
      "exp(sin(x1)*cos(u2))*ln(3 + x2)",
      "sqrt(x1^2 + u1^2 + u2^2 + 1)",
      "sin(cos(x1 + u1))*exp(-0.1*u2^2)",
      "(x1 - u1)^2*(x2 + u2)^2/(1 + x3^2)",
      "-(-(x1)) + 2^x2",
      "ln(exp(x1*u1) + 1)",
      "cos(x1)^2 + sin(x1)^2",
  };
}

double max_abs(const SectionJet& a) {
  double r = 0.0;
  for (const auto& j : a.X) r = std::max(r, std::abs(j.value()));
  for (const auto& j : a.V) r = std::max(r, std::abs(j.value()));
  return r;
}

double max_abs(const TensorJet& t) {
  double r = 0.0;
  for (int k = 0; k < t.size(); ++k) r = std::max(r, max_abs(t.column(k)));
  return r;
}

double max_abs(const std::vector<double>& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

double max_abs(const JetVector& v) {
  double r = 0.0;
  for (const auto& j : v) r = std::max(r, std::abs(j.value()));
  return r;
}

}  // namespace algmech::testing
