#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "algmech/algebroid.hpp"

namespace algmech {

/// Section of the prolongation bundle with expression coefficients in the
/// basis {X_alpha, V_alpha}.
struct ProlongationSection {
  std::vector<Expr> X;
  std::vector<Expr> V;

  SectionJet at(const Frame& frame) const;
};

// Section arithmetic at a frame. Orders follow the jet rules.
SectionJet operator+(const SectionJet& a, const SectionJet& b);
SectionJet operator-(const SectionJet& a, const SectionJet& b);
SectionJet operator-(const SectionJet& a);
SectionJet operator*(const Jet& f, const SectionJet& a);
SectionJet operator*(double f, const SectionJet& a);

SectionJet zero_section(const Frame& frame);
/// E_k of the basis (X_0..X_{m-1}, V_0..V_{m-1}).
SectionJet basis_section(const Frame& frame, int k);
/// Coefficient of E_k.
const Jet& coefficient(const SectionJet& a, int k);
/// Values of the 2m coefficients.
Eigen::VectorXd values(const SectionJet& a);
int order(const SectionJet& a);

/// Components of sigma^1(A) as a vector field on E, in coordinates [x..., y...].
JetVector anchor_field(const Frame& frame, const SectionJet& a);
/// sigma^1(A)(f) = A_X^a sigma_a^i df/dx^i + A_V^a df/dy^a.
Jet anchor_prolongation(const Frame& frame, const SectionJet& a, const Jet& f);
/// Derivative of f along a precomputed anchor_field.
Jet directional(const JetVector& field, const Jet& f);

/// [A, B]_TE. The result carries one derivative less than its arguments.
SectionJet bracket(const Frame& frame, const SectionJet& a, const SectionJet& b);

/// J(A) = A_X^a V_a.
SectionJet tangent_structure(const SectionJet& a);
/// C = y^a V_a.
SectionJet euler_section(const Frame& frame);

/// (1,1)-tensor at a frame, stored by the images of the basis sections.
class TensorJet {
 public:
  TensorJet() = default;
  explicit TensorJet(std::vector<SectionJet> columns) : columns_(std::move(columns)) {}
  static TensorJet identity(const Frame& frame);
  static TensorJet zero(const Frame& frame);

  const SectionJet& column(int k) const { return columns_[k]; }
  SectionJet& column(int k) { return columns_[k]; }
  int size() const { return static_cast<int>(columns_.size()); }

  SectionJet operator()(const SectionJet& a) const;
  /// (*this) o rhs
  TensorJet compose(const TensorJet& rhs) const;

  friend TensorJet operator+(const TensorJet& a, const TensorJet& b);
  friend TensorJet operator-(const TensorJet& a, const TensorJet& b);
  friend TensorJet operator*(double f, const TensorJet& a);

 private:
  std::vector<SectionJet> columns_;
};

/// Tensor values at a point: column k is T(E_k), row r the E_r component.
/// The blocks follow the basis order (X, V); vx()(g, b) is the V_g
/// component of T(X_b).
struct TensorBlock11 {
  Eigen::MatrixXd matrix;

  int m() const { return static_cast<int>(matrix.rows() / 2); }
  Eigen::MatrixXd xx() const { return matrix.topLeftCorner(m(), m()); }
  Eigen::MatrixXd xv() const { return matrix.topRightCorner(m(), m()); }
  Eigen::MatrixXd vx() const { return matrix.bottomLeftCorner(m(), m()); }
  Eigen::MatrixXd vv() const { return matrix.bottomRightCorner(m(), m()); }
};

TensorBlock11 values(const TensorJet& t);

/// J = X^a (x) V_a.
TensorJet tangent_structure_tensor(const Frame& frame);

/// (L_A T)(E_k) = [A, T(E_k)] - T([A, E_k]).
TensorJet lie_derivative_tensor(const Frame& frame, const SectionJet& a, const TensorJet& t);

/// S = y^a X_a + S^a V_a. Either explicit component expressions, or a
/// derived field (the canonical semispray of a Lagrangian) that consumes
/// `order_loss` derivatives of the frame.
class Semispray {
 public:
  using Field = std::function<JetVector(const Frame&)>;

  static Semispray from_expressions(std::vector<Expr> components);
  static Semispray from_field(Field field, int order_loss);

  /// S^a as jets.
  JetVector components(const Frame& frame) const;
  /// (y, S) as a section.
  SectionJet section(const Frame& frame) const;
  int order_loss() const { return order_loss_; }
  const std::optional<std::vector<Expr>>& expressions() const { return expressions_; }

 private:
  Field field_;
  int order_loss_ = 0;
  std::optional<std::vector<Expr>> expressions_;
};

/// S(f) = y^a sigma_a^i df/dx^i + S^a df/dy^a, given S^a as jets.
Jet semispray_derivative(const Frame& frame, const JetVector& s_components, const Jet& f);

struct SprayTestReport {
  double euler_residual = 0.0;    // max |y^b dS^a/dy^b - 2 S^a|
  double bracket_residual = 0.0;  // max |[C, S] - S|
  double tol = 0.0;
  bool pass = false;
};

SprayTestReport spray_test(const AlgebroidDef& def, const Semispray& s, const std::vector<EvalPoint>& samples,
                           double tol);

/// Values of [A, B]_TE at p: (X-part, V-part).
std::pair<std::vector<double>, std::vector<double>> bracket_prolongation(const AlgebroidDef& def,
                                                                         const ProlongationSection& a,
                                                                         const ProlongationSection& b,
                                                                         const EvalPoint& p);

}  // namespace algmech
