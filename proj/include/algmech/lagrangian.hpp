#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "algmech/prolongation.hpp"

namespace algmech {

struct FiberMetric {
  Eigen::MatrixXd g;
  Eigen::MatrixXd inverse;
  double determinant = 0.0;
  double condition = 0.0;  // ratio of extreme singular values
};

/// |det| below this is treated as singular: 1e-10 * max|entry|^rows.
double singularity_floor(const Eigen::MatrixXd& matrix);

/// Throws SingularMetricError when the matrix fails the floor test.
void require_regular(const Eigen::MatrixXd& matrix, const EvalPoint& p, const char* what);

/// g_ab = d^2 L / dy^a dy^b at p, with inverse and condition estimate.
FiberMetric fiber_metric(const AlgebroidDef& def, const Expr& lagrangian, const EvalPoint& p);

/// Derivatives of a Lagrangian at a frame.
struct LagrangianJets {
  Jet L;
  JetVector dx;   // dL/dx^i
  JetVector dy;   // dL/dy^a
  JetMatrix dxy;  // [i][b] = d^2 L / dx^i dy^b
  JetMatrix g;    // [a][b] = d^2 L / dy^a dy^b

  LagrangianJets(const Frame& frame, const Expr& lagrangian);
};

/// S^e solving g_be S^e = sigma_b^i dL/dx^i - sigma_a^i d^2L/dx^i dy^b y^a - L_ba^c y^a dL/dy^c.
/// Consumes two derivatives of the frame.
JetVector canonical_semispray_components(const Frame& frame, const LagrangianJets& lj);
Semispray canonical_semispray(const AlgebroidDef& def, const Expr& lagrangian);

/// E_L = y^a dL/dy^a - L.
Jet energy(const Frame& frame, const LagrangianJets& lj);
double energy(const AlgebroidDef& def, const Expr& lagrangian, const EvalPoint& p);

/// theta_L = dL/dy^a X^a; returns the components.
std::vector<double> cartan_one_section(const AlgebroidDef& def, const Expr& lagrangian, const EvalPoint& p);
/// theta_L(A) = dL/dy^a A_X^a.
Jet cartan_one_section(const LagrangianJets& lj, const SectionJet& a);

/// omega_L at a frame:
///   omega(A, B) = g_ab (A_V^b B_X^a - B_V^b A_X^a) + C_ab A_X^a B_X^b,
///   C_ab = sigma_a^i d^2L/dx^i dy^b - sigma_b^i d^2L/dx^i dy^a - dL/dy^e L_ab^e.
/// This is the displayed local form with the 1/2 absorbed by the sum over
/// all ordered pairs (a, b).
class CartanForm {
 public:
  CartanForm(const Frame& frame, const LagrangianJets& lj);

  Jet operator()(const SectionJet& a, const SectionJet& b) const;
  const JetMatrix& C() const { return c_; }
  const JetMatrix& g() const { return g_; }

 private:
  JetMatrix g_;
  JetMatrix c_;
};

double cartan_two_section(const AlgebroidDef& def, const Expr& lagrangian, const ProlongationSection& a,
                          const ProlongationSection& b, const EvalPoint& p);

/// omega_L(S, A) + (d^E E_L)(A), with d^E f(A) = sigma^1(A)(f).
double symplectic_equation_residual(const AlgebroidDef& def, const Expr& lagrangian, const Semispray& s,
                                    const ProlongationSection& a, const EvalPoint& p);

struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<EvalPoint> states;
  std::vector<double> energy;  // empty without a Lagrangian
  std::optional<std::string> error;

  /// max |E(t) - E(0)| / max(1, |E(0)|); 0 without a Lagrangian.
  double energy_drift() const;
};

/// Classical RK4 for dx^i/dt = sigma_a^i(x) y^a, dy^a/dt = S^a(x, y).
/// A domain error stops the integration and is recorded in `error`.
Trajectory integrate_sode(const AlgebroidDef& def, const Semispray& s, const std::vector<double>& x0,
                          const std::vector<double>& y0, double dt, int steps,
                          const std::optional<Expr>& lagrangian = std::nullopt);

/// CSV with header t,x1..xn,y1..ym[,E], 17 significant digits, and a final
/// "# energy_drift=..." line when energies are present.
void write_csv(std::ostream& os, const Trajectory& traj);

/// d/dt(dL/dy^a) - sigma_a^i dL/dx^i + L_ab^e y^b dL/dy^e along xdot = sigma y, ydot given.
std::vector<double> euler_lagrange_residual(const AlgebroidDef& def, const Expr& lagrangian, const EvalPoint& p,
                                            const std::vector<double>& ydot);

}  // namespace algmech
