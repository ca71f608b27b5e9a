#include <doctest.h>

#include "algmech/algebroid.hpp"
#include "algmech/errors.hpp"
#include "support.hpp"

using namespace algmech;
using namespace algmech::testing;

namespace {

BaseSection section(const AlgebroidDef& def, const std::vector<std::string>& comps) {
  std::vector<Expr> e;
  for (const auto& c : comps) e.push_back(def.parse(c));
  return BaseSection::from(def, std::move(e));
}

const EvalPoint kPoint{{0.5, 1.0, 0.0}, {1.0, 2.0}};

}  // namespace

TEST_CASE("validate_algebroid on the driftless data") {
  const System sys = driftless();
  const ValidationReport r = validate_algebroid(sys.def, samples(sys, 50, 1), 1e-12);
  CHECK(r.pass);
  CHECK(r.antisymmetry == 0.0);
  CHECK(r.cyclic == 0.0);
  CHECK(r.compatibility == 0.0);
}

TEST_CASE("validate_algebroid detects a tampered structure function") {
  System sys = driftless();
  sys.def.structure[0][1][0] = Expr::number(2.0);
  sys.def.structure[1][0][0] = Expr::number(-2.0);
  const ValidationReport r = validate_algebroid(sys.def, samples(sys, 10, 1), 1e-8);
  CHECK_FALSE(r.pass);
  CHECK(r.compatibility > 0.5);

  System asym = driftless();
  asym.def.structure[1][0][0] = Expr::number(0.0);
  CHECK(validate_algebroid(asym.def, samples(asym, 5, 1), 1e-8).antisymmetry == doctest::Approx(1.0));
}

TEST_CASE("validate_algebroid on an abelian algebroid reports the column commutator") {
  System sys = make_system("abelian", {"x1", "x2"}, {"y1", "y2"}, {{"1", "x2"}, {"0", "1"}}, {}, "0.5*(y1^2+y2^2)",
                           true);
  // [d1, x2 d1 + d2] = 0, so the zero bracket is compatible.
  ValidationReport r = validate_algebroid(sys.def, samples(sys, 10, 2), 1e-12);
  CHECK(r.pass);
  CHECK(r.cyclic == 0.0);
  sys.def.anchor[1][1] = sys.def.parse("x1");
  // [d1, x2 d1 + x1 d2] = d2
  r = validate_algebroid(sys.def, samples(sys, 10, 2), 1e-12);
  CHECK_FALSE(r.pass);
  CHECK(r.cyclic == 0.0);
  CHECK(r.compatibility == doctest::Approx(1.0));
}

TEST_CASE("validate_algebroid on the synthetic systems") {
  for (const System& sys : {abelian_flat(), heisenberg(), twisted()}) {
    CAPTURE(sys.name);
    CHECK(validate_algebroid(sys.def, samples(sys, 50, 4), 1e-12).pass);
  }
}

TEST_CASE("validate_algebroid reports a failing Jacobi identity") {
  // [e1, e2] = e3, [e1, e3] = e1: the cyclic sum on (e1, e2, e3) is e3
  System sys = make_system("broken", {"x1"}, {"y1", "y2", "y3"}, {{"0", "0", "0"}}, {{0, 1, 2, "1"}, {0, 2, 0, "1"}},
                           "0.5*(y1^2+y2^2+y3^2)", true);
  const ValidationReport r = validate_algebroid(sys.def, samples(sys, 3, 1), 1e-8);
  CHECK_FALSE(r.pass);
  CHECK(r.cyclic == doctest::Approx(1.0));
  CHECK(r.compatibility == 0.0);
  sys.def.structure[0][2][0] = Expr::number(0.0);
  sys.def.structure[2][0][0] = Expr::number(0.0);
  CHECK(validate_algebroid(sys.def, samples(sys, 3, 1), 1e-12).pass);
}

TEST_CASE("anchor_apply") {
  const System sys = driftless();
  const BaseSection s1 = section(sys.def, {"1", "0"});
  const BaseSection s2 = section(sys.def, {"0", "1"});
  CHECK(anchor_apply(sys.def, s2, sys.def.parse("x2"), kPoint) == 1.0);
  CHECK(anchor_apply(sys.def, s2, sys.def.parse("5"), kPoint) == 0.0);
  for (const auto& p : samples(sys, 10, 5)) CHECK(anchor_apply(sys.def, s1, sys.def.parse("x1"), p) == 1.0);
  CHECK_THROWS_AS(anchor_apply(sys.def, s1, sys.def.parse("u1"), kPoint), FiberDependenceError);
}

TEST_CASE("bracket_base_sections") {
  const System sys = driftless();
  const BaseSection s1 = section(sys.def, {"1", "0"});
  const BaseSection s2 = section(sys.def, {"0", "1"});
  CHECK(bracket_base_sections(sys.def, s1, s2, kPoint) == std::vector<double>{1.0, 0.0});
  const BaseSection r = section(sys.def, {"x1*x2", "sin(x3)"});
  CHECK(max_abs(bracket_base_sections(sys.def, r, r, kPoint)) == 0.0);
  const BaseSection xs1 = section(sys.def, {"x1", "0"});
  for (const auto& p : samples(sys, 10, 6)) CHECK(bracket_base_sections(sys.def, s1, xs1, p) == std::vector<double>{1.0, 0.0});
  const BaseSection fiber = section(sys.def, {"u1", "0"});
  CHECK_FALSE(fiber.x_only);
  CHECK_THROWS_AS(bracket_base_sections(sys.def, fiber, s1, kPoint), FiberDependenceError);
}

TEST_CASE("bracket_base_sections satisfies Leibniz and Jacobi") {
  const System sys = heisenberg();
  const BaseSection a = section(sys.def, {"x2", "sin(x1)", "x3^2"});
  const BaseSection b = section(sys.def, {"1", "x1*x3", "cos(x2)"});
  const BaseSection c = section(sys.def, {"x1^2", "0", "exp(0.2*x2)"});
  const Expr f = sys.def.parse("x1*x2 + x3");
  std::vector<Expr> fb;
  for (const auto& e : b.components) fb.push_back(f * e);
  const BaseSection fbs = BaseSection::from(sys.def, fb);
  for (const auto& p : samples(sys, 10, 8)) {
    const Frame fr(sys.def, p);
    const JetVector ja = fr.eval(a.components), jb = fr.eval(b.components), jc = fr.eval(c.components);
    const JetVector lhs = bracket_base(fr, ja, fr.eval(fbs.components));
    const JetVector ab = bracket_base(fr, ja, jb);
    const Jet af = fr.anchor_apply(ja, fr.eval(f));
    const Jet fv = fr.eval(f);
    for (int g = 0; g < 3; ++g) CHECK(std::abs((lhs[g] - fv * ab[g] - af * jb[g]).value()) <= 1e-12);
    const JetVector j1 = bracket_base(fr, ja, bracket_base(fr, jb, jc));
    const JetVector j2 = bracket_base(fr, jb, bracket_base(fr, jc, ja));
    const JetVector j3 = bracket_base(fr, jc, bracket_base(fr, ja, jb));
    for (int g = 0; g < 3; ++g) CHECK(std::abs((j1[g] + j2[g] + j3[g]).value()) <= 1e-11);
  }
}

TEST_CASE("exterior_derivative_function") {
  const System sys = driftless();
  CHECK(exterior_derivative_function(sys.def, sys.def.parse("x3"), kPoint) == std::vector<double>{0.0, 1.0});
  CHECK(exterior_derivative_function(sys.def, sys.def.parse("4"), kPoint) == std::vector<double>{0.0, 0.0});
  CHECK(exterior_derivative_function(sys.def, sys.def.parse("x1"), kPoint) == std::vector<double>{1.0, 0.5});
}

TEST_CASE("d^E d^E f = 0") {
  for (const System& sys : {driftless(), heisenberg(), twisted()}) {
    CAPTURE(sys.name);
    const Expr f = sys.def.parse(sys.def.n == 3 ? "sin(x1*x2) + x3^3" : "exp(x1)*cos(x2)");
    for (const auto& p : samples(sys, 10, 9)) {
      const Frame fr(sys.def, p);
      JetVector theta;
      for (int a = 0; a < sys.def.m; ++a) theta.push_back(fr.anchor_derivative(a, fr.eval(f)));
      const JetMatrix dd = exterior_derivative_one_section(fr, theta);
      for (const auto& row : dd)
        for (const auto& e : row) CHECK(std::abs(e.value()) <= 1e-12);
    }
  }
}

TEST_CASE("lift_section") {
  const System sys = driftless();
  const BaseSection s1 = section(sys.def, {"1", "0"});
  CHECK(lift_section(sys.def, s1, LiftKind::Complete, kPoint) == std::vector<double>{1, 0, -2, 0});
  CHECK(lift_section(sys.def, s1, LiftKind::Vertical, kPoint) == std::vector<double>{0, 0, 1, 0});
  const System flat = abelian_flat();
  const BaseSection c = section(flat.def, {"2", "-3"});
  for (const auto& p : samples(flat, 10, 10)) {
    const auto v = lift_section(flat.def, c, LiftKind::Complete, p);
    CHECK(v[2] == 0.0);
    CHECK(v[3] == 0.0);
  }
}

TEST_CASE("complete lift is a bracket homomorphism") {
  // [r^c, s^c] = [r, s]^c and [r^c, s^v] = [r, s]^v
  const System sys = heisenberg();
  const BaseSection r = section(sys.def, {"x2", "sin(x1)", "x3^2"});
  const BaseSection s = section(sys.def, {"1", "x1*x3", "cos(x2)"});
  for (const auto& p : samples(sys, 10, 11)) {
    const Frame fr(sys.def, p);
    const JetVector rs = bracket_base(fr, fr.eval(r.components), fr.eval(s.components));
    const SectionJet rc = lift_section(fr, r, LiftKind::Complete);
    const SectionJet sc = lift_section(fr, s, LiftKind::Complete);
    const SectionJet sv = lift_section(fr, s, LiftKind::Vertical);
    const SectionJet cc = bracket(fr, rc, sc);
    const SectionJet cv = bracket(fr, rc, sv);
    for (int g = 0; g < 3; ++g) {
      CHECK(std::abs((cc.X[g] - rs[g]).value()) <= 1e-12);
      CHECK(std::abs(cv.X[g].value()) <= 1e-12);
      CHECK(std::abs((cv.V[g] - rs[g]).value()) <= 1e-12);
    }
    // V-part of [r, s]^c
    for (int g = 0; g < 3; ++g) {
      Jet expect = fr.zero();
      for (int e = 0; e < 3; ++e) {
        expect += fr.anchor_derivative(e, rs[g]) * fr.y(e);
        for (int b = 0; b < 3; ++b) expect -= fr.L(b, e, g) * rs[b] * fr.y(e);
      }
      CHECK(std::abs((cc.V[g] - expect).value()) <= 1e-11);
    }
  }
}
