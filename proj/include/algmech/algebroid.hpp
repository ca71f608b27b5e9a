#pragma once

#include <string>
#include <vector>

#include "algmech/eval.hpp"
#include "algmech/expr.hpp"
#include "algmech/jet.hpp"

namespace algmech {

/// A Lie algebroid E -> M in local coordinates. Expressions are parsed
/// against coords() = [base_coords..., fiber_coords...].
struct AlgebroidDef {
  int n = 0;
  int m = 0;
  std::vector<std::string> base_coords;
  std::vector<std::string> fiber_coords;
  std::vector<std::vector<Expr>> anchor;                  // [i][alpha] = sigma_alpha^i
  std::vector<std::vector<std::vector<Expr>>> structure;  // [alpha][beta][gamma] = L_{alpha beta}^gamma

  std::vector<std::string> coords() const;
  Expr parse(const std::string& source) const;

  /// Zero anchor and structure of the given shape.
  static AlgebroidDef empty(std::vector<std::string> base_coords, std::vector<std::string> fiber_coords);
};

/// Section of E: components rho^alpha in the basis {s_alpha}.
struct BaseSection {
  std::vector<Expr> components;
  bool x_only = true;

  /// Computes x_only from the components.
  static BaseSection from(const AlgebroidDef& def, std::vector<Expr> components);
};

/// Jets of the coordinates and of the algebroid data at one point. Every
/// derived quantity in the library is computed as a jet expression over a
/// Frame, so first and higher derivatives come for free.
class Frame {
 public:
  /// Default number of derivatives carried. Enough for the connection of a
  /// Lagrangian semispray plus one more derivative (curvature, Jacobi
  /// endomorphism, dynamical covariant derivative of tensors).
  static constexpr int kDefaultOrder = 4;

  Frame(const AlgebroidDef& def, const EvalPoint& p, int order = kDefaultOrder);

  const AlgebroidDef& def() const { return *def_; }
  const EvalPoint& point() const { return point_; }
  int n() const { return def_->n; }
  int m() const { return def_->m; }
  int order() const { return order_; }
  const JetSpace& space() const { return *space_; }

  const Jet& x(int i) const { return coords_[i]; }
  const Jet& y(int alpha) const { return coords_[def_->n + alpha]; }
  const JetVector& coordinates() const { return coords_; }
  const Jet& sigma(int i, int alpha) const { return sigma_[i * def_->m + alpha]; }
  bool sigma_zero(int i, int alpha) const { return sigma_zero_[i * def_->m + alpha]; }
  const Jet& L(int alpha, int beta, int gamma) const { return L_[(alpha * def_->m + beta) * def_->m + gamma]; }
  bool L_zero(int alpha, int beta, int gamma) const {
    return L_zero_[(alpha * def_->m + beta) * def_->m + gamma];
  }

  Jet constant(double value) const { return Jet::constant(*space_, order_, value); }
  Jet zero() const { return constant(0.0); }
  Jet eval(const Expr& e) const;
  JetVector eval(const std::vector<Expr>& es) const;

  /// sigma_alpha^i df/dx^i
  Jet anchor_derivative(int alpha, const Jet& f) const;
  /// df/dy^alpha
  Jet fiber_derivative(int alpha, const Jet& f) const { return f.derivative(def_->n + alpha); }
  /// rho^alpha sigma_alpha^i df/dx^i
  Jet anchor_apply(const JetVector& rho, const Jet& f) const;

 private:
  const AlgebroidDef* def_;
  EvalPoint point_;
  int order_;
  const JetSpace* space_;
  JetVector coords_;
  JetVector sigma_;
  std::vector<char> sigma_zero_;
  JetVector L_;
  std::vector<char> L_zero_;
};

struct ValidationReport {
  double antisymmetry = 0.0;
  double cyclic = 0.0;
  double compatibility = 0.0;
  double tol = 0.0;
  bool pass = false;
  double max_residual() const;
};

/// Pointwise check of the algebroid axioms: antisymmetry of L, the cyclic
/// structure equation and anchor compatibility. Evaluation errors are
/// rethrown with the sample point appended.
ValidationReport validate_algebroid(const AlgebroidDef& def, const std::vector<EvalPoint>& samples, double tol);

/// sigma(s)(f) at p. f must not depend on fiber coordinates.
double anchor_apply(const AlgebroidDef& def, const BaseSection& s, const Expr& f, const EvalPoint& p);

/// Components of [r, s]_E at p. Both sections must be x-only.
std::vector<double> bracket_base_sections(const AlgebroidDef& def, const BaseSection& r, const BaseSection& s,
                                          const EvalPoint& p);

/// [r, s]^gamma = r^a s^b L_ab^gamma + sigma(r)(s^gamma) - sigma(s)(r^gamma) over jets.
JetVector bracket_base(const Frame& frame, const JetVector& r, const JetVector& s);

/// (d^E f)_alpha = sigma_alpha^i df/dx^i at p.
std::vector<double> exterior_derivative_function(const AlgebroidDef& def, const Expr& f, const EvalPoint& p);

/// (d^E theta)(s_alpha, s_beta) for a 1-section with jet components theta_beta:
/// sigma_alpha(theta_beta) - sigma_beta(theta_alpha) - theta_gamma L_ab^gamma.
JetMatrix exterior_derivative_one_section(const Frame& frame, const JetVector& theta);

enum class LiftKind { Vertical, Complete };

/// Section of the prolongation at a point: jet coefficients of X_alpha and V_alpha.
struct SectionJet {
  JetVector X;
  JetVector V;
};

/// Vertical lift (0, rho) or complete lift
/// (rho, (sigma_eps^i d rho^a/dx^i - L_{b eps}^a rho^b) y^eps) as jets.
SectionJet lift_section(const Frame& frame, const BaseSection& s, LiftKind kind);

/// Values of the lift at p: first m entries X-part, last m entries V-part.
std::vector<double> lift_section(const AlgebroidDef& def, const BaseSection& s, LiftKind kind, const EvalPoint& p);

/// Throws FiberDependenceError if e mentions a fiber coordinate.
void require_base_only(const AlgebroidDef& def, const Expr& e, const char* what);

}  // namespace algmech
