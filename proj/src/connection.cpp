#include "algmech/connection.hpp"

#include <algorithm>
#include <cmath>

#include "algmech/errors.hpp"

namespace algmech {

Connection Connection::user(std::vector<std::vector<Expr>> n) {
  Connection c;
  c.provenance_ = Provenance::User;
  c.exprs_ = std::move(n);
  return c;
}

JetMatrix canonical_connection(const Frame& frame, const JetVector& s_components) {
  const int m = frame.m();
  JetMatrix n(m, JetVector(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Jet v = -frame.fiber_derivative(a, s_components[b]);
      for (int e = 0; e < m; ++e)
        if (!frame.L_zero(a, e, b)) v += frame.y(e) * frame.L(a, e, b);
      n[a][b] = 0.5 * v;
    }
  }
  return n;
}

Geometry::Geometry(const AlgebroidDef& def, const Semispray& s, const Connection& n, const EvalPoint& p, int order)
    : frame_(def, p, order), canonical_(n.is_canonical()) {
  const int m = def.m;
  s_ = s.components(frame_);
  spray_.V = s_;
  for (int a = 0; a < m; ++a) spray_.X.push_back(frame_.y(a));
  spray_field_ = anchor_field(frame_, spray_);
  if (canonical_) {
    n_ = canonical_connection(frame_, s_);
  } else {
    const auto& e = n.expressions();
    if (static_cast<int>(e.size()) != m ||
        std::any_of(e.begin(), e.end(), [m](const auto& row) { return static_cast<int>(row.size()) != m; }))
      throw ConfigError("/connection", "connection needs " + std::to_string(m) + "x" + std::to_string(m) + " entries");
    n_.assign(m, JetVector(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) n_[a][b] = frame_.eval(e[a][b]);
  }
}

Jet Geometry::delta_of(int alpha, const Jet& f) const {
  Jet out = frame_.anchor_derivative(alpha, f);
  for (int b = 0; b < m(); ++b) out -= n_[alpha][b] * frame_.fiber_derivative(b, f);
  return out;
}

SectionJet Geometry::delta(int alpha) const {
  SectionJet out = basis_section(frame_, alpha);
  for (int c = 0; c < m(); ++c) out.V[c] = -n_[alpha][c];
  return out;
}

TensorJet Geometry::J() const { return tangent_structure_tensor(frame_); }

TensorJet Geometry::h() const {
  std::vector<SectionJet> cols;
  for (int b = 0; b < m(); ++b) cols.push_back(delta(b));
  for (int b = 0; b < m(); ++b) cols.push_back(zero_section(frame_));
  return TensorJet(std::move(cols));
}

TensorJet Geometry::v() const { return TensorJet::identity(frame_) - h(); }

TensorJet Geometry::F() const {
  std::vector<SectionJet> cols;
  for (int b = 0; b < m(); ++b) {
    SectionJet c = -1.0 * basis_section(frame_, m() + b);
    for (int g = 0; g < m(); ++g) c = c + n_[b][g] * delta(g);
    cols.push_back(std::move(c));
  }
  for (int b = 0; b < m(); ++b) cols.push_back(delta(b));
  return TensorJet(std::move(cols));
}

TensorJet Geometry::almost_product() const { return 2.0 * h() - TensorJet::identity(frame_); }

TensorJet Geometry::jacobi_tensor() const {
  const JetMatrix r = jacobi();
  std::vector<SectionJet> cols;
  for (int b = 0; b < m(); ++b) {
    SectionJet c = zero_section(frame_);
    c.V = r[b];
    cols.push_back(std::move(c));
  }
  for (int b = 0; b < m(); ++b) cols.push_back(zero_section(frame_));
  return TensorJet(std::move(cols));
}

SectionJet Geometry::h(const SectionJet& a) const {
  SectionJet out;
  out.X = a.X;
  for (int c = 0; c < m(); ++c) {
    Jet v = -(n_[0][c] * a.X[0]);
    for (int b = 1; b < m(); ++b) v -= n_[b][c] * a.X[b];
    out.V.push_back(std::move(v));
  }
  return out;
}

SectionJet Geometry::v(const SectionJet& a) const { return a - h(a); }

std::vector<JetMatrix> Geometry::curvature() const {
  const int mm = m();
  std::vector<JetMatrix> r(mm, JetMatrix(mm, JetVector(mm)));
  for (int a = 0; a < mm; ++a) {
    for (int b = 0; b < mm; ++b) {
      for (int c = 0; c < mm; ++c) {
        Jet v = delta_of(b, n_[a][c]) - delta_of(a, n_[b][c]);
        for (int e = 0; e < mm; ++e)
          if (!frame_.L_zero(a, b, e)) v += frame_.L(a, b, e) * n_[e][c];
        r[a][b][c] = std::move(v);
      }
    }
  }
  return r;
}

SectionJet Geometry::curvature_form(const SectionJet& a, const SectionJet& b) const {
  const auto r = curvature();
  const int mm = m();
  SectionJet out;
  for (int c = 0; c < mm; ++c) {
    Jet v = Jet::constant(frame_.space(), r[0][0][0].order(), 0.0);
    for (int al = 0; al < mm; ++al)
      for (int be = 0; be < mm; ++be) v += r[al][be][c] * a.X[al] * b.X[be];
    out.X.push_back(Jet::constant(frame_.space(), v.order(), 0.0));
    out.V.push_back(std::move(v));
  }
  return out;
}

JetMatrix Geometry::jacobi() const { return canonical_ ? jacobi_canonical() : jacobi_general(); }

JetMatrix Geometry::jacobi_canonical() const {
  const int mm = m();
  JetMatrix r(mm, JetVector(mm));
  for (int b = 0; b < mm; ++b) {
    for (int a = 0; a < mm; ++a) {
      Jet v = -frame_.anchor_derivative(b, s_[a]) - S_of(n_[b][a]);
      for (int c = 0; c < mm; ++c) {
        v -= n_[c][a] * n_[b][c];
        for (int e = 0; e < mm; ++e) {
          if (!frame_.L_zero(e, b, c)) v += frame_.L(e, b, c) * n_[c][a] * frame_.y(e);
          if (!frame_.L_zero(c, e, a)) v += frame_.L(c, e, a) * n_[b][c] * frame_.y(e);
        }
      }
      r[b][a] = std::move(v);
    }
  }
  return r;
}

JetMatrix Geometry::jacobi_general() const {
  const int mm = m();
  JetMatrix r(mm, JetVector(mm));
  for (int b = 0; b < mm; ++b) {
    for (int c = 0; c < mm; ++c) {
      Jet v = -frame_.anchor_derivative(b, s_[c]) - S_of(n_[b][c]);
      for (int a = 0; a < mm; ++a) {
        v += n_[b][a] * n_[a][c];
        v += n_[b][a] * frame_.fiber_derivative(a, s_[c]);
        for (int e = 0; e < mm; ++e)
          if (!frame_.L_zero(a, b, e)) v += n_[e][c] * frame_.L(a, b, e) * frame_.y(a);
      }
      r[b][c] = std::move(v);
    }
  }
  return r;
}

JetMatrix Geometry::jacobi_bracket() const {
  const int mm = m();
  JetMatrix r(mm);
  for (int b = 0; b < mm; ++b) r[b] = v(bracket(frame_, spray_, delta(b))).V;
  return r;
}

SectionJet Geometry::nabla(const SectionJet& a) const {
  const int mm = m();
  // Berwald-basis coefficients A = a^b delta_b + b^b V_b.
  const JetVector& ah = a.X;
  JetVector av(mm);
  for (int c = 0; c < mm; ++c) {
    Jet t = a.V[c];
    for (int b = 0; b < mm; ++b) t += n_[b][c] * ah[b];
    av[c] = std::move(t);
  }
  JetVector c_h(mm), c_v(mm);
  for (int al = 0; al < mm; ++al) {
    Jet t = S_of(ah[al]);
    Jet u = S_of(av[al]);
    for (int b = 0; b < mm; ++b) {
      Jet k = n_[b][al];
      for (int e = 0; e < mm; ++e)
        if (!frame_.L_zero(e, b, al)) k += frame_.y(e) * frame_.L(e, b, al);
      t += k * ah[b];
      u -= av[b] * (n_[b][al] + frame_.fiber_derivative(b, s_[al]));
    }
    c_h[al] = std::move(t);
    c_v[al] = std::move(u);
  }
  SectionJet out;
  out.X = c_h;
  for (int g = 0; g < mm; ++g) {
    Jet t = c_v[g];
    for (int b = 0; b < mm; ++b) t -= n_[b][g] * c_h[b];
    out.V.push_back(std::move(t));
  }
  return out;
}

SectionJet Geometry::nabla_bracket(const SectionJet& a) const {
  return h(bracket(frame_, spray_, h(a))) + v(bracket(frame_, spray_, v(a)));
}

TensorJet Geometry::nabla(const TensorJet& t) const {
  std::vector<SectionJet> cols;
  for (int k = 0; k < t.size(); ++k) {
    const SectionJet e = basis_section(frame_, k);
    cols.push_back(nabla(t.column(k)) - t(nabla(e)));
  }
  return TensorJet(std::move(cols));
}

SectionJet Geometry::berwald(const SectionJet& a, const SectionJet& b) const {
  const TensorJet fj = F() + J();
  const SectionJet ha = h(a), va = v(a);
  return v(bracket(frame_, ha, v(b))) + h(bracket(frame_, va, h(b))) +
         tangent_structure(bracket(frame_, va, fj(b))) + fj(bracket(frame_, ha, tangent_structure(b)));
}

SectionJet Geometry::jacobi_split_residual(const SectionJet& a) const {
  const SectionJet vs = v(spray_);
  const SectionJet lie_h = bracket(frame_, vs, h(a)) - h(bracket(frame_, vs, a));
  return jacobi_tensor()(a) - curvature_form(spray_, a) - v(lie_h);
}

// Point-value wrappers.

Eigen::MatrixXd connection_values(const AlgebroidDef& def, const Semispray& s, const Connection& n,
                                  const EvalPoint& p) {
  const Geometry g(def, s, n, p, s.order_loss() + 1);
  Eigen::MatrixXd out(def.m, def.m);
  for (int a = 0; a < def.m; ++a)
    for (int b = 0; b < def.m; ++b) out(a, b) = g.N()[a][b].value();
  return out;
}

GeometryOracle bracket_oracle(const AlgebroidDef& def, const Semispray& s, const EvalPoint& p) {
  const int m = def.m;
  const Frame frame(def, p, s.order_loss() + 2);
  const SectionJet spray = s.section(frame);
  const TensorJet lsj = lie_derivative_tensor(frame, spray, tangent_structure_tensor(frame));
  // -L_S J (X_a) = X_a - 2 N_a^b V_b
  JetMatrix n(m, JetVector(m));
  for (int a = 0; a < m; ++a) {
    const SectionJet col = lsj.column(a);
    for (int b = 0; b < m; ++b) n[a][b] = 0.5 * col.V[b];
  }
  std::vector<SectionJet> delta;
  for (int a = 0; a < m; ++a) {
    SectionJet d = basis_section(frame, a);
    for (int b = 0; b < m; ++b) d.V[b] = -n[a][b];
    delta.push_back(std::move(d));
  }
  // v(Z) = (Z_V^c + Z_X^b N_b^c) V_c
  auto vertical = [&](const SectionJet& z) {
    std::vector<double> out(m);
    for (int c = 0; c < m; ++c) {
      double t = z.V[c].value();
      for (int b = 0; b < m; ++b) t += z.X[b].value() * n[b][c].value();
      out[c] = t;
    }
    return out;
  };
  GeometryOracle out;
  out.N.resize(m, m);
  out.R2.resize(m, m);
  out.R3.assign(m, std::vector<std::vector<double>>(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) out.N(a, b) = n[a][b].value();
    for (int b = 0; b < m; ++b) out.R3[a][b] = vertical(bracket(frame, delta[a], delta[b]));
    const auto phi = vertical(bracket(frame, spray, delta[a]));
    for (int c = 0; c < m; ++c) out.R2(a, c) = phi[c];
  }
  return out;
}

double berwald_derivative(const AlgebroidDef& def, const Semispray& s, const Connection& n, const Expr& f,
                          int alpha, const EvalPoint& p) {
  const Geometry g(def, s, n, p, s.order_loss() + 1);
  return g.delta_of(alpha, g.frame().eval(f)).value();
}

CurvatureTensor curvature(const AlgebroidDef& def, const Semispray& s, const Connection& n, const EvalPoint& p) {
  const Geometry g(def, s, n, p, s.order_loss() + 2);
  const auto r = g.curvature();
  CurvatureTensor out;
  out.R3.assign(def.m, std::vector<std::vector<double>>(def.m, std::vector<double>(def.m)));
  for (int a = 0; a < def.m; ++a)
    for (int b = 0; b < def.m; ++b)
      for (int c = 0; c < def.m; ++c) out.R3[a][b][c] = r[a][b][c].value();
  return out;
}

JacobiEndomorphism jacobi_endomorphism(const AlgebroidDef& def, const Semispray& s, const Connection& n,
                                       const EvalPoint& p) {
  const Geometry g(def, s, n, p, s.order_loss() + 2);
  const JetMatrix r = g.jacobi();
  JacobiEndomorphism out;
  out.R2.resize(def.m, def.m);
  for (int b = 0; b < def.m; ++b)
    for (int a = 0; a < def.m; ++a) out.R2(b, a) = r[b][a].value();
  return out;
}

StructureTensors structure_tensors(const AlgebroidDef& def, const Semispray& s, const Connection& n,
                                   const EvalPoint& p) {
  const Geometry g(def, s, n, p, s.order_loss() + 1);
  return {values(g.h()), values(g.v()), values(g.F())};
}

Eigen::VectorXd nabla_section(const AlgebroidDef& def, const Semispray& s, const Connection& n,
                              const ProlongationSection& a, const EvalPoint& p) {
  const Geometry g(def, s, n, p, s.order_loss() + 2);
  return values(g.nabla(a.at(g.frame())));
}

Eigen::VectorXd berwald_connection(const AlgebroidDef& def, const Semispray& s, const Connection& n,
                                   const ProlongationSection& a, const ProlongationSection& b, const EvalPoint& p) {
  const Geometry g(def, s, n, p, s.order_loss() + 2);
  return values(g.berwald(a.at(g.frame()), b.at(g.frame())));
}

GeometryFrame geometry_frame(const AlgebroidDef& def, const Semispray& s, const Connection& n, const EvalPoint& p) {
  const int m = def.m;
  const Geometry g(def, s, n, p, std::max(Frame::kDefaultOrder, s.order_loss() + 2));
  GeometryFrame out;
  out.S = values(g.S());
  out.N.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.N(a, b) = g.N()[a][b].value();

  const auto r = g.curvature();
  out.curvature.assign(m, std::vector<std::vector<double>>(m, std::vector<double>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) out.curvature[a][b][c] = r[a][b][c].value();

  const JetMatrix jac = g.jacobi();
  const JetMatrix jac_bracket = g.jacobi_bracket();
  out.jacobi.resize(m, m);
  for (int b = 0; b < m; ++b) {
    for (int a = 0; a < m; ++a) {
      out.jacobi(b, a) = jac[b][a].value();
      out.jacobi_vs_bracket = std::max(out.jacobi_vs_bracket, std::abs(jac[b][a].value() - jac_bracket[b][a].value()));
    }
  }

  const TensorJet f = g.F();
  out.F = values(f).matrix;
  out.F_squared_plus_id =
      (values(f.compose(f)).matrix + Eigen::MatrixXd::Identity(2 * m, 2 * m)).cwiseAbs().maxCoeff();
  out.nabla_J = values(g.nabla(g.J())).matrix.cwiseAbs().maxCoeff();

  out.berwald.assign(m, std::vector<std::vector<double>>(m, std::vector<double>(m)));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const SectionJet d = g.berwald(g.delta(a), g.delta(b));
      for (int c = 0; c < m; ++c) out.berwald[a][b][c] = d.X[c].value();
    }
  }
  for (int k = 0; k < 2 * m; ++k) {
    const Eigen::VectorXd res = values(g.jacobi_split_residual(basis_section(g.frame(), k)));
    out.phi_vs_iS_omega = std::max(out.phi_vs_iS_omega, res.cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace algmech
