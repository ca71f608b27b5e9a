#pragma once

// Fixtures and generators shared by the unit, property and acceptance tests.

#include <string>
#include <tuple>
#include <vector>

#include "algmech/config.hpp"
#include "algmech/sampling.hpp"
#include "algmech/symmetry.hpp"

namespace algmech::testing {

struct System {
  std::string name;
  AlgebroidDef def;
  Expr lagrangian;
  bool spray = true;  // canonical semispray is 2-homogeneous

  Semispray semispray() const { return canonical_semispray(def, lagrangian); }
};

using StructureEntry = std::tuple<int, int, int, std::string>;  // 0-based alpha, beta, gamma; L_ab^c

/// Builds a system from text. Each structure entry also sets its antisymmetric mirror.
System make_system(std::string name, std::vector<std::string> base, std::vector<std::string> fiber,
                   const std::vector<std::vector<std::string>>& anchor, const std::vector<StructureEntry>& structure,
                   const std::string& lagrangian, bool spray);

/// The built-in driftless fixture.
SystemConfig driftless_config();
System driftless();
/// R^2 with the standard bracket and L = |y|^2/2; the semispray vanishes.
System abelian_flat();
/// Heisenberg algebroid on R^3: s1 = d1, s2 = d2 + x1 d3, s3 = d3, [s1, s2] = s3.
System heisenberg();
/// s1 = d1, s2 = x1^2 d1 + d2 on R^2 ([s1, s2] = 2 x1 s1) with an x-dependent,
/// non-homogeneous Lagrangian; its semispray is not a spray.
System twisted();

/// A smooth user connection for `sys`, unrelated to its semispray.
Connection arbitrary_connection(const System& sys);

std::vector<EvalPoint> samples(const System& sys, int count, std::uint64_t seed);

/// Random smooth expression over the coordinates of `def`, bounded on the sample box.
Expr random_expr(SplitMix64& rng, const AlgebroidDef& def, int depth);
ProlongationSection random_section(SplitMix64& rng, const AlgebroidDef& def, int depth = 2);

struct Candidate {
  std::string name;
  SectionField field;
};

/// Prolongation sections for the equivalence checks, including failures.
std::vector<Candidate> candidate_corpus(const System& sys);
/// Base sections for the Lie-symmetry checks.
std::vector<std::pair<std::string, BaseSection>> base_corpus(const System& sys);

struct EquivalenceStats {
  int candidates = 0;
  int dynamical_pass = 0;
  int equivalence_agree = 0;     // dynamical <=> (Newtonoid and invariant equation)
  int cartan_checked = 0;
  int cartan_pass = 0;
  int cartan_implies_dynamical = 0;
  int lie_candidates = 0;
  int lie_pass = 0;
  int lie_agree = 0;             // bracket test and jacobi_field residual agree
  double star_leibniz = 0.0;     // max |nabla(f*A) - S(f)*A - f*nabla(A)|
};

/// Runs the candidate and base corpora of `sys` at `pts`, and the star-product
/// Leibniz rule on `leibniz_cases` random (f, A) pairs per point.
EquivalenceStats symmetry_equivalences(const System& sys, const std::vector<EvalPoint>& pts, double tol,
                                       int leibniz_cases, std::uint64_t seed);

/// Fixed expressions covering every operator, over [x1, x2, x3, u1, u2].
std::vector<std::string> expression_corpus();

double max_abs(const SectionJet& a);
double max_abs(const TensorJet& t);
double max_abs(const std::vector<double>& v);
double max_abs(const JetVector& v);

}  // namespace algmech::testing
