#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algmech/connection.hpp"
#include "algmech/lagrangian.hpp"

namespace algmech {

/// A prolongation section or scalar built at each sample from the local
/// geometry (so candidates may refer to S, N or C, not only to expressions).
using SectionField = std::function<SectionJet(const Geometry&)>;
using ScalarField = std::function<Jet(const Geometry&)>;

SectionField section_field(const ProlongationSection& a);
SectionField semispray_field();
SectionField euler_field();
SectionField complete_lift_field(const BaseSection& s);
SectionField vertical_lift_field(const BaseSection& s);
/// (X^a, S(X^a) + y^e L_eb^a X^b); Newtonoid by construction.
SectionField newtonoid_completion(std::vector<Expr> x_components);
SectionField scaled_field(ScalarField f, SectionField a);
ScalarField scalar_field(const Expr& f);
ScalarField energy_field(const Expr& lagrangian);

enum class SymmetryKind { Dynamical, Lie, Newtonoid, Cartan };
const char* to_string(SymmetryKind kind);

struct SampleResidual {
  EvalPoint point;
  std::vector<double> residual;
};

struct SymmetryVerdict {
  SymmetryKind kind = SymmetryKind::Dynamical;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::vector<SampleResidual> per_sample;
  /// Secondary residuals (max over samples), in a fixed order.
  std::vector<std::pair<std::string, double>> details;

  double detail(const std::string& name) const;
};

/// [S, A] = 0, with the split residuals
///   velocity_relation: Y^a - S(X^a) - y^e L_eb^a X^b,  acceleration_relation: S(Y^a) - A(S^a).
SymmetryVerdict dynamical_symmetry_check(const AlgebroidDef& def, const Semispray& s, const SectionField& a,
                                         const std::vector<EvalPoint>& samples, double tol);

/// J[S, A] = 0, with the equivalent criterion v(A) = J(nabla A) as detail "vertical_criterion".
SymmetryVerdict newtonoid_check(const AlgebroidDef& def, const Semispray& s, const SectionField& a,
                                const std::vector<EvalPoint>& samples, double tol);

/// nabla(nabla X)^a + R_b^a X^b with nabla X^a = S(X^a) + (N_b^a + y^e L_eb^a) X^b.
JetVector invariant_equation_residual(const Geometry& g, const SectionJet& a);
/// The same quantity from brackets alone: -X-part of [S, [S, A]].
JetVector invariant_equation_oracle(const Geometry& g, const SectionJet& a);
std::vector<double> invariant_equation_residual(const AlgebroidDef& def, const Semispray& s, const SectionField& a,
                                                const EvalPoint& p);

/// Complete lift of xtilde tested as a dynamical symmetry. Details: "pde_x"
/// and "pde_v" (the two component families of [S, X^c]) and "jacobi_field"
/// (nabla^2 X^v + Phi(X^c)).
SymmetryVerdict lie_symmetry_check(const AlgebroidDef& def, const Semispray& s, const BaseSection& xtilde,
                                   const std::vector<EvalPoint>& samples, double tol);

/// Residuals: max over basis pairs of |(L_A omega_L)(B, C)| and |sigma^1(A)(E_L)|.
/// Sections are built against the canonical semispray of the Lagrangian.
SymmetryVerdict cartan_symmetry_check(const AlgebroidDef& def, const Expr& lagrangian, const SectionField& a,
                                      const std::vector<EvalPoint>& samples, double tol);

struct ConservedQuantity {
  enum class Provenance { User, FromCartan };
  std::optional<Expr> f;
  ScalarField field;
  Provenance provenance = Provenance::User;
  double sdot_max = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::vector<SampleResidual> per_sample;
};

/// max |S(f)| over samples.
ConservedQuantity conservation_check(const AlgebroidDef& def, const Semispray& s, const ScalarField& f,
                                     const std::vector<EvalPoint>& samples, double tol,
                                     std::optional<Expr> expr = std::nullopt);

/// Solution X of omega_L(X, B) = -d^E f(B) over the basis, as jets.
/// Throws SingularMetricError when the pairing matrix is singular.
SectionJet converse_cartan_section(const Frame& frame, const LagrangianJets& lj, const Jet& f);

struct ConverseCartan {
  std::vector<Eigen::VectorXd> sections;  // X at each sample, 2m values
  SymmetryVerdict cartan;                 // Cartan residuals of X
};

ConverseCartan converse_cartan(const AlgebroidDef& def, const Expr& lagrangian, const ScalarField& f,
                               const std::vector<EvalPoint>& samples, double tol);

struct ExactCartanResult {
  SymmetryVerdict cartan;           // A is a Cartan symmetry
  double witness_residual = 0.0;    // max |(L_A theta_L - d^E f)(B)|
  ConservedQuantity conserved;      // g = f - theta_L(A)
  double reconstruction_error = 0.0;  // max |X - A|, X solving i_X omega_L = -d^E(theta_L(A) - f)
  double reconstruction_cartan = 0.0; // Cartan residual of that X
};

/// Exact Cartan symmetry -> conservation law, followed by the converse
/// solve. Since omega_L = d^E theta_L, i_A omega_L = d^E g, so the converse
/// equation is solved with -g = theta_L(A) - f to recover A.
/// Throws ExactnessError when f fails the witness test.
ExactCartanResult conservation_from_cartan(const AlgebroidDef& def, const Expr& lagrangian, const SectionField& a,
                                           const Expr& f, const std::vector<EvalPoint>& samples, double tol);

/// f * A = f A + S(f) J(A).
SectionJet star_product(const Geometry& g, const Jet& f, const SectionJet& a);
Eigen::VectorXd star_product(const AlgebroidDef& def, const Semispray& s, const Expr& f, const SectionField& a,
                             const EvalPoint& p);

}  // namespace algmech
