#pragma once

#include <optional>
#include <vector>

#include "algmech/prolongation.hpp"

namespace algmech {

/// Nonlinear connection coefficients N_a^b(x, y): either the canonical
/// connection of the semispray or user expressions.
class Connection {
 public:
  enum class Provenance { Canonical, User };

  static Connection canonical() { return Connection(); }
  /// n[a][b] = N_a^b.
  static Connection user(std::vector<std::vector<Expr>> n);

  Provenance provenance() const { return provenance_; }
  bool is_canonical() const { return provenance_ == Provenance::Canonical; }
  const std::vector<std::vector<Expr>>& expressions() const { return exprs_; }

 private:
  Provenance provenance_ = Provenance::Canonical;
  std::vector<std::vector<Expr>> exprs_;
};

/// N_a^b = 1/2 (-dS^b/dy^a + y^e L_ae^b) as jets; result[a][b] = N_a^b.
JetMatrix canonical_connection(const Frame& frame, const JetVector& s_components);

/// Everything derived from (S, N) at one point. All returned objects are
/// jets over the frame; the frame order bounds how many derivatives remain.
class Geometry {
 public:
  Geometry(const AlgebroidDef& def, const Semispray& s, const Connection& n, const EvalPoint& p,
           int order = Frame::kDefaultOrder);

  const Frame& frame() const { return frame_; }
  int m() const { return frame_.m(); }
  bool canonical() const { return canonical_; }

  /// S^a
  const JetVector& S() const { return s_; }
  /// y^a X_a + S^a V_a
  const SectionJet& spray() const { return spray_; }
  /// [a][b] = N_a^b
  const JetMatrix& N() const { return n_; }

  /// S(f)
  Jet S_of(const Jet& f) const { return directional(spray_field_, f); }
  /// delta_a(f) = sigma_a^i df/dx^i - N_a^b df/dy^b
  Jet delta_of(int alpha, const Jet& f) const;
  /// delta_a = X_a - N_a^b V_b
  SectionJet delta(int alpha) const;

  TensorJet J() const;
  TensorJet h() const;
  TensorJet v() const;
  /// F(X_b) = -V_b + N_b^c delta_c, F(V_b) = delta_b.
  TensorJet F() const;
  /// The almost product structure h - v.
  TensorJet almost_product() const;
  /// Phi(X_b) = R_b^a V_a, Phi(V_b) = 0, from jacobi().
  TensorJet jacobi_tensor() const;

  SectionJet h(const SectionJet& a) const;
  SectionJet v(const SectionJet& a) const;

  /// R[a][b][c] = R_ab^c = delta_b(N_a^c) - delta_a(N_b^c) + L_ab^e N_e^c.
  std::vector<JetMatrix> curvature() const;
  /// Omega(A, B) = R_ab^c A_X^a B_X^b V_c, i.e. v[hA, hB].
  SectionJet curvature_form(const SectionJet& a, const SectionJet& b) const;

  /// [b][a] = R_b^a; the canonical formula for canonical N, the general one otherwise.
  JetMatrix jacobi() const;
  /// R_b^a = -sigma_b^i dS^a/dx^i - S(N_b^a) - N_c^a N_b^c + (L_eb^c N_c^a + L_ce^a N_b^c) y^e.
  JetMatrix jacobi_canonical() const;
  /// R_b^c = -sigma_b^i dS^c/dx^i - S(N_b^c) + N_b^a N_a^c + N_b^a dS^c/dy^a + N_e^c L_ab^e y^a.
  JetMatrix jacobi_general() const;
  /// V-coefficients of v[S, delta_b].
  JetMatrix jacobi_bracket() const;

  /// Dynamical covariant derivative through the Berwald-basis coefficients:
  ///   nabla a^a = S(a^a) + (N_b^a + y^e L_eb^a) a^b,
  ///   nabla (b^b V_b) = (S(b^a) - b^b (N_b^a + dS^a/dy^b)) V_a.
  SectionJet nabla(const SectionJet& a) const;
  /// h[S, hA] + v[S, vA].
  SectionJet nabla_bracket(const SectionJet& a) const;
  /// (nabla T)(E_k) = nabla(T E_k) - T(nabla E_k).
  TensorJet nabla(const TensorJet& t) const;

  /// D_A B = v[hA, vB] + h[vA, hB] + J[vA, (F+J)B] + (F+J)[hA, JB].
  SectionJet berwald(const SectionJet& a, const SectionJet& b) const;

  /// Phi(A) - Omega(S, A) - v(L_{vS} h)(A).
  SectionJet jacobi_split_residual(const SectionJet& a) const;

 private:
  Frame frame_;
  bool canonical_;
  JetVector s_;
  SectionJet spray_;
  JetVector spray_field_;
  JetMatrix n_;
};

/// Point values of the connection-geometry quantities.
struct CurvatureTensor {
  std::vector<std::vector<std::vector<double>>> R3;  // [a][b][c] = R_ab^c
};
struct JacobiEndomorphism {
  Eigen::MatrixXd R2;  // (b, a) = R_b^a
};
struct StructureTensors {
  TensorBlock11 h, v, F;
};

Eigen::MatrixXd connection_values(const AlgebroidDef& def, const Semispray& s, const Connection& n,
                                  const EvalPoint& p);
/// Connection, curvature and Jacobi endomorphism computed from brackets
/// alone: N from -L_S J, then R_ab^c V_c = v[delta_a, delta_b] and
/// R_b^a V_a = v[S, delta_b]. Independent of the local coefficient formulas.
struct GeometryOracle {
  Eigen::MatrixXd N;                                  // (a, b) = N_a^b
  std::vector<std::vector<std::vector<double>>> R3;   // [a][b][c] = R_ab^c
  Eigen::MatrixXd R2;                                 // (b, a) = R_b^a
};
GeometryOracle bracket_oracle(const AlgebroidDef& def, const Semispray& s, const EvalPoint& p);

double berwald_derivative(const AlgebroidDef& def, const Semispray& s, const Connection& n, const Expr& f,
                          int alpha, const EvalPoint& p);
CurvatureTensor curvature(const AlgebroidDef& def, const Semispray& s, const Connection& n, const EvalPoint& p);
JacobiEndomorphism jacobi_endomorphism(const AlgebroidDef& def, const Semispray& s, const Connection& n,
                                       const EvalPoint& p);
StructureTensors structure_tensors(const AlgebroidDef& def, const Semispray& s, const Connection& n,
                                   const EvalPoint& p);
Eigen::VectorXd nabla_section(const AlgebroidDef& def, const Semispray& s, const Connection& n,
                              const ProlongationSection& a, const EvalPoint& p);
Eigen::VectorXd berwald_connection(const AlgebroidDef& def, const Semispray& s, const Connection& n,
                                   const ProlongationSection& a, const ProlongationSection& b, const EvalPoint& p);

/// Everything the geometry report prints at one point.
struct GeometryFrame {
  std::vector<double> S;
  Eigen::MatrixXd N;                                      // (a, b) = N_a^b
  std::vector<std::vector<std::vector<double>>> curvature;  // [a][b][c] = R_ab^c
  Eigen::MatrixXd jacobi;                                 // (b, a) = R_b^a
  Eigen::MatrixXd F;                                      // 2m x 2m, columns are images of X_b, V_b
  std::vector<std::vector<std::vector<double>>> berwald;  // [a][b][c]: D_{delta_a} delta_b = B^c delta_c
  // internal identity residuals (max abs)
  double phi_vs_iS_omega = 0.0;  // Phi - i_S Omega - v o L_{vS} h; the last term vanishes for sprays
  double nabla_J = 0.0;
  double F_squared_plus_id = 0.0;
  double jacobi_vs_bracket = 0.0;
};

GeometryFrame geometry_frame(const AlgebroidDef& def, const Semispray& s, const Connection& n, const EvalPoint& p);

}  // namespace algmech
