#include <doctest.h>

#include "algmech/connection.hpp"
#include "algmech/lagrangian.hpp"
#include "support.hpp"

using namespace algmech;
using namespace algmech::testing;

namespace {

const EvalPoint kPoint{{0.5, 1.0, 0.0}, {1.0, 2.0}};

ProlongationSection section(const System& sys, const std::vector<std::string>& x, const std::vector<std::string>& v) {
  ProlongationSection s;
  for (const auto& e : x) s.X.push_back(sys.def.parse(e));
  for (const auto& e : v) s.V.push_back(sys.def.parse(e));
  return s;
}

double diff(const TensorJet& a, const TensorJet& b) { return max_abs(a - b); }

}  // namespace

TEST_CASE("canonical connection of the driftless system") {
  const System sys = driftless();
  const Semispray s = sys.semispray();
  const Eigen::MatrixXd n = connection_values(sys.def, s, Connection::canonical(), kPoint);
  CHECK(n(0, 0) == 2.0);
  CHECK(n(1, 0) == 0.0);
  CHECK(n(1, 1) == 0.0);
  // formula value; a printed table carries +u1 for this entry
  CHECK(n(0, 1) == -1.0);
  const GeometryOracle oracle = bracket_oracle(sys.def, s, kPoint);
  CHECK((oracle.N - n).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("canonical connection of a quadratic spray on an abelian algebroid") {
  // S^a = -G^a_bc y^b y^c with symmetric constant G gives N_a^b = G^b_ac y^c
  const System flat = abelian_flat();
  const double G[2][2][2] = {{{1.0, 0.5}, {0.5, -2.0}}, {{0.0, 3.0}, {3.0, 1.5}}};  // G[a][b][c]
  std::vector<Expr> comps;
  for (int a = 0; a < 2; ++a) {
    std::string e = "0";
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        e += " - " + std::to_string(G[a][b][c]) + "*y" + std::to_string(b + 1) + "*y" + std::to_string(c + 1);
    comps.push_back(flat.def.parse(e));
  }
  const Semispray s = Semispray::from_expressions(comps);
  for (const auto& p : samples(flat, 10, 1)) {
    const Eigen::MatrixXd n = connection_values(flat.def, s, Connection::canonical(), p);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        double expect = 0.0;
        for (int c = 0; c < 2; ++c) expect += G[b][a][c] * p.y[c];
        CHECK(n(a, b) == doctest::Approx(expect));
      }
  }
}

TEST_CASE("berwald_derivative") {
  const System sys = driftless();
  const Semispray s = sys.semispray();
  const Connection n = Connection::canonical();
  const Eigen::MatrixXd nv = connection_values(sys.def, s, n, kPoint);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      CHECK(berwald_derivative(sys.def, s, n, sys.def.parse("u" + std::to_string(c + 1)), a, kPoint) ==
            doctest::Approx(-nv(a, c)));
  const Expr fx = sys.def.parse("x1*x2 + x3");
  const BaseSection s2 = BaseSection::from(sys.def, {Expr::number(0), Expr::number(1)});
  CHECK(berwald_derivative(sys.def, s, n, fx, 1, kPoint) == doctest::Approx(anchor_apply(sys.def, s2, fx, kPoint)));
  CHECK(berwald_derivative(sys.def, s, n, sys.def.parse("-u1*u2"), 0, kPoint) == doctest::Approx(4.0 + nv(0, 1)));
}

TEST_CASE("curvature and Jacobi endomorphism at the worked point") {
  const System sys = driftless();
  const Semispray s = sys.semispray();
  const CurvatureTensor r = curvature(sys.def, s, Connection::canonical(), kPoint);
  CHECK(r.R3[0][1][0] == 2.0);
  CHECK(r.R3[1][0][0] == -2.0);
  const JacobiEndomorphism j = jacobi_endomorphism(sys.def, s, Connection::canonical(), kPoint);
  CHECK(j.R2(0, 0) == -4.0);

  const System flat = abelian_flat();
  std::vector<std::vector<Expr>> zero(2, std::vector<Expr>(2));
  const CurvatureTensor rf = curvature(flat.def, flat.semispray(), Connection::user(zero), EvalPoint{{0.5, 1.0}, {1.0, 2.0}});
  for (const auto& a : rf.R3)
    for (const auto& b : a)
      for (double c : b) CHECK(c == 0.0);
}

TEST_CASE("curvature antisymmetry, spray identities and Phi(S) = 0") {
  for (const System& sys : {driftless(), heisenberg(), abelian_flat()}) {
    CAPTURE(sys.name);
    const Semispray s = sys.semispray();
    const int m = sys.def.m;
    for (const auto& p : samples(sys, 50, 2)) {
      const Geometry g(sys.def, s, Connection::canonical(), p);
      const auto r3 = g.curvature();
      const auto r2 = g.jacobi();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          Jet contracted = g.frame().zero();
          for (int c = 0; c < m; ++c) {
            CHECK(std::abs((r3[a][b][c] + r3[b][a][c]).value()) <= 1e-12);
            contracted += r3[c][a][b] * g.frame().y(c);
          }
          CHECK(std::abs((r2[a][b] - contracted).value()) <= 1e-10);
        }
      for (int a = 0; a < m; ++a) {
        Jet phi_s = g.frame().zero();
        for (int b = 0; b < m; ++b) phi_s += r2[b][a] * g.frame().y(b);
        CHECK(std::abs(phi_s.value()) <= 1e-10);
      }
    }
  }
}

TEST_CASE("three routes to the Jacobi endomorphism and the curvature agree") {
  for (const System& sys : {driftless(), heisenberg(), twisted()}) {
    CAPTURE(sys.name);
    const Semispray s = sys.semispray();
    const int m = sys.def.m;
    for (const Connection& n : {Connection::canonical(), arbitrary_connection(sys)}) {
      for (const auto& p : samples(sys, 20, 3)) {
        const Geometry g(sys.def, s, n, p);
        const JetMatrix gen = g.jacobi_general(), br = g.jacobi_bracket();
        const auto r3 = g.curvature();
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) {
            CHECK(std::abs((gen[a][b] - br[a][b]).value()) <= 1e-9);
            if (n.is_canonical()) CHECK(std::abs((g.jacobi_canonical()[a][b] - br[a][b]).value()) <= 1e-9);
            const SectionJet omega = g.v(bracket(g.frame(), g.delta(a), g.delta(b)));
            for (int c = 0; c < m; ++c) {
              CHECK(std::abs((omega.V[c] - r3[a][b][c]).value()) <= 1e-9);
              CHECK(std::abs(omega.X[c].value()) <= 1e-12);
            }
          }
        if (n.is_canonical()) {
          const GeometryOracle o = bracket_oracle(sys.def, s, p);
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
              CHECK(std::abs(o.N(a, b) - g.N()[a][b].value()) <= 1e-10);
              CHECK(std::abs(o.R2(a, b) - g.jacobi()[a][b].value()) <= 1e-9);
              for (int c = 0; c < m; ++c) CHECK(std::abs(o.R3[a][b][c] - r3[a][b][c].value()) <= 1e-9);
            }
        }
      }
    }
  }
}

TEST_CASE("canonical N equals -L_S J") {
  // -L_S J (X_a) = X_a - 2 N_a^b V_b, -L_S J (V_a) = -V_a
  for (const System& sys : {driftless(), heisenberg(), twisted()}) {
    CAPTURE(sys.name);
    for (const auto& p : samples(sys, 20, 4)) {
      const Geometry g(sys.def, sys.semispray(), Connection::canonical(), p);
      const TensorJet ls = lie_derivative_tensor(g.frame(), g.spray(), g.J());
      const TensorBlock11 t = values((-1.0) * ls);
      const int m = g.m();
      Eigen::MatrixXd n(m, m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) n(b, a) = g.N()[a][b].value();
      CHECK((t.xx() - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((t.vx() + 2.0 * n).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(t.xv().cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((t.vv() + Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("projectors and the almost complex structure") {
  for (const System& sys : {driftless(), heisenberg(), twisted()}) {
    CAPTURE(sys.name);
    for (const Connection& n : {Connection::canonical(), arbitrary_connection(sys)}) {
      for (const auto& p : samples(sys, 20, 5)) {
        const Geometry g(sys.def, sys.semispray(), n, p);
        const TensorJet h = g.h(), v = g.v(), f = g.F(), j = g.J(), id = TensorJet::identity(g.frame());
        const TensorJet np = g.almost_product();
        CHECK(diff(h.compose(h), h) <= 1e-12);
        CHECK(diff(v.compose(v), v) <= 1e-12);
        CHECK(max_abs(h.compose(v)) <= 1e-12);
        CHECK(max_abs(v.compose(h)) <= 1e-12);
        CHECK(diff(h + v, id) == 0.0);
        CHECK(diff(np, h - v) <= 1e-12);
        CHECK(max_abs(f.compose(f) + id) <= 1e-10);
        CHECK(diff(f.compose(j), h) <= 1e-12);
        CHECK(diff(j.compose(f), v) <= 1e-12);
        CHECK(max_abs(v.compose(f) + j) <= 1e-12);
        CHECK(max_abs(f.compose(h) + j) <= 1e-12);
        CHECK(diff(h.compose(f), f + j) <= 1e-12);
        CHECK(diff(f.compose(v), f + j) <= 1e-12);
        CHECK(diff(np.compose(f), f + 2.0 * j) <= 1e-12);
      }
    }
  }
  const System sys = driftless();
  const StructureTensors st = structure_tensors(sys.def, sys.semispray(), Connection::canonical(), kPoint);
  CHECK((st.h.matrix * st.h.matrix - st.h.matrix).isZero(0.0));
  CHECK((st.h.matrix + st.v.matrix).isIdentity(0.0));
  CHECK((st.F.matrix * st.F.matrix).isApprox(-Eigen::MatrixXd::Identity(4, 4)));
}

TEST_CASE("h L_S J = -h and J L_S v = -v for any connection") {
  SplitMix64 rng(6);
  for (const System& sys : {driftless(), heisenberg(), twisted()}) {
    CAPTURE(sys.name);
    for (const Connection& n : {Connection::canonical(), arbitrary_connection(sys)}) {
      for (const auto& p : samples(sys, 10, 7)) {
        const Geometry g(sys.def, sys.semispray(), n, p);
        const SectionJet a = random_section(rng, sys.def).at(g.frame());
        const SectionJet ls_ja = bracket(g.frame(), g.spray(), tangent_structure(a));
        CHECK(max_abs(g.h(ls_ja) + g.h(a)) <= 1e-10);
        const SectionJet ls_va = bracket(g.frame(), g.spray(), g.v(a));
        CHECK(max_abs(tangent_structure(ls_va) + g.v(a)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("dynamical covariant derivative on basis sections and functions") {
  const System sys = driftless();
  const Geometry g(sys.def, sys.semispray(), Connection::canonical(), kPoint);
  // h[S, delta_1] has coefficient N_1^1 - L_12^1 u^2 = 0 on delta_1
  const SectionJet nd = g.nabla(g.delta(0));
  CHECK(std::abs(nd.X[0].value()) <= 1e-12);
  const LagrangianJets lj(g.frame(), sys.lagrangian);
  CHECK(g.S_of(energy(g.frame(), lj)).value() == 0.0);
  for (const System& s : {driftless(), heisenberg(), twisted()}) {
    for (const auto& p : samples(s, 20, 8)) {
      const Geometry gg(s.def, s.semispray(), Connection::canonical(), p);
      for (int b = 0; b < s.def.m; ++b) {
        const SectionJet vb = basis_section(gg.frame(), s.def.m + b);
        CHECK(max_abs(gg.nabla(vb) - gg.v(bracket(gg.frame(), gg.spray(), vb))) <= 1e-9);
      }
    }
  }
}

TEST_CASE("nabla through local coefficients matches h L_S h + v L_S v") {
  SplitMix64 rng(9);
  for (const System& sys : {driftless(), heisenberg(), twisted()}) {
    CAPTURE(sys.name);
    for (const Connection& n : {Connection::canonical(), arbitrary_connection(sys)}) {
      for (const auto& p : samples(sys, 10, 10)) {
        const Geometry g(sys.def, sys.semispray(), n, p);
        const SectionJet a = random_section(rng, sys.def).at(g.frame());
        CHECK(max_abs(g.nabla(a) - g.nabla_bracket(a)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("nabla of the structure tensors") {
  for (const System& sys : {driftless(), heisenberg(), twisted()}) {
    CAPTURE(sys.name);
    const int m = sys.def.m;
    for (const auto& p : samples(sys, 20, 11)) {
      const Geometry g(sys.def, sys.semispray(), Connection::canonical(), p);
      CHECK(max_abs(g.nabla(g.J())) <= 1e-9);
      CHECK(max_abs(g.nabla(g.F())) <= 1e-9);
      CHECK(max_abs(g.nabla(g.h())) <= 1e-9);
      CHECK(max_abs(g.nabla(g.v())) <= 1e-9);

      const Geometry u(sys.def, sys.semispray(), arbitrary_connection(sys), p);
      CHECK(max_abs(u.nabla(u.h())) <= 1e-9);
      CHECK(max_abs(u.nabla(u.v())) <= 1e-9);
      const TensorBlock11 nj = values(u.nabla(u.J()));
      CHECK(nj.xx().isZero(0.0));
      CHECK(nj.xv().cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(nj.vv().cwiseAbs().maxCoeff() <= 1e-12);
      const Frame& fr = u.frame();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          Jet c = fr.fiber_derivative(a, u.S()[b]) + 2.0 * u.N()[a][b];
          for (int e = 0; e < m; ++e) c -= fr.y(e) * fr.L(a, e, b);
          CHECK(std::abs(nj.vx()(b, a) + c.value()) <= 1e-9);
        }
    }
  }
}

TEST_CASE("decomposition nabla = L_S + F + J - Phi and Phi = L_S h - F - J") {
  SplitMix64 rng(12);
  for (const System& sys : {driftless(), heisenberg(), twisted()}) {
    CAPTURE(sys.name);
    for (const auto& p : samples(sys, 10, 13)) {
      const Geometry g(sys.def, sys.semispray(), Connection::canonical(), p);
      const SectionJet a = random_section(rng, sys.def).at(g.frame());
      const TensorJet f = g.F(), j = g.J(), phi = g.jacobi_tensor();
      const SectionJet rhs = bracket(g.frame(), g.spray(), a) + f(a) + j(a) - phi(a);
      CHECK(max_abs(g.nabla(a) - rhs) <= 1e-8);
      const TensorJet lsh = lie_derivative_tensor(g.frame(), g.spray(), g.h());
      CHECK(max_abs(phi - (lsh - f - j)) <= 1e-9);
    }
  }
}

TEST_CASE("Phi = i_S Omega + v L_{vS} h") {
  SplitMix64 rng(14);
  for (const System& sys : {driftless(), heisenberg(), twisted()}) {
    CAPTURE(sys.name);
    for (const auto& p : samples(sys, 20, 15)) {
      const Geometry g(sys.def, sys.semispray(), Connection::canonical(), p);
      const SectionJet a = random_section(rng, sys.def).at(g.frame());
      CHECK(max_abs(g.jacobi_split_residual(a)) <= 1e-9);
      if (sys.spray) CHECK(max_abs(g.jacobi_tensor()(a) - g.curvature_form(g.spray(), a)) <= 1e-9);
    }
  }
}

TEST_CASE("spray case: nabla S = nabla C = 0 and nabla = D_S") {
  SplitMix64 rng(16);
  for (const System& sys : {driftless(), heisenberg(), abelian_flat()}) {
    CAPTURE(sys.name);
    for (const auto& p : samples(sys, 20, 17)) {
      const Geometry g(sys.def, sys.semispray(), Connection::canonical(), p);
      CHECK(max_abs(g.nabla(g.spray())) <= 1e-8);
      CHECK(max_abs(g.nabla(euler_section(g.frame()))) <= 1e-8);
      const SectionJet b = random_section(rng, sys.def).at(g.frame());
      CHECK(max_abs(g.berwald(g.spray(), b) - g.nabla(b)) <= 1e-8);
    }
  }
}

TEST_CASE("Berwald connection on the Berwald basis") {
  const System sys = driftless();
  const Semispray s = sys.semispray();
  const Connection n = Connection::canonical();
  const auto d1 = section(sys, {"1", "0"}, {"-u2", "u1"});
  const auto d2 = section(sys, {"0", "1"}, {"0", "0"});
  const Eigen::VectorXd r = berwald_connection(sys.def, s, n, d1, d2, kPoint);
  CHECK(r.isApprox(Eigen::Vector4d(1, 0, -2, 1)));
  for (int a = 0; a < 2; ++a) {
    std::vector<std::string> x{"0", "0"}, v{"0", "0"};
    v[a] = "1";
    const auto va = section(sys, x, v);
    for (const auto& p : samples(sys, 10, 18)) {
      CHECK(berwald_connection(sys.def, s, n, va, d1, p).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(berwald_connection(sys.def, s, n, va, d2, p).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(berwald_connection(sys.def, s, n, va, va, p).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
  const GeometryFrame gf = geometry_frame(sys.def, s, n, kPoint);
  // D_{delta_1} delta_2 = dN_1^c/du^2 delta_c = delta_1
  CHECK(gf.berwald[0][1][0] == doctest::Approx(1.0));
  CHECK(gf.berwald[0][1][1] == doctest::Approx(0.0));
}

TEST_CASE("geometry_frame at the worked point") {
  const System sys = driftless();
  const GeometryFrame gf = geometry_frame(sys.def, sys.semispray(), Connection::canonical(), kPoint);
  CHECK(gf.S == std::vector<double>{-2.0, 1.0});
  CHECK(gf.N(0, 0) == 2.0);
  CHECK(gf.curvature[0][1][0] == 2.0);
  CHECK(gf.jacobi(0, 0) == -4.0);
  CHECK(gf.phi_vs_iS_omega <= 1e-9);
  CHECK(gf.nabla_J <= 1e-9);
  CHECK(gf.F_squared_plus_id <= 1e-9);
  CHECK(gf.jacobi_vs_bracket <= 1e-9);
}

TEST_CASE("nabla_section agrees with the frame computation") {
  const System sys = driftless();
  const auto a = section(sys, {"x1*u2", "sin(x3)"}, {"u1^2", "x2"});
  const Eigen::VectorXd r = nabla_section(sys.def, sys.semispray(), Connection::canonical(), a, kPoint);
  const Geometry g(sys.def, sys.semispray(), Connection::canonical(), kPoint);
  CHECK((r - values(g.nabla(a.at(g.frame())))).cwiseAbs().maxCoeff() == 0.0);
  CHECK((r - values(g.nabla_bracket(a.at(g.frame())))).cwiseAbs().maxCoeff() <= 1e-12);
}
