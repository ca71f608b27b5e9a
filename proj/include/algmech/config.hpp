#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algmech/algebroid.hpp"
#include "algmech/connection.hpp"
#include "algmech/sampling.hpp"

namespace algmech {

struct Candidate {
  enum class Type { BaseSection, ProlongationSection, Newtonoid, ConservedFunction, ExactCartan };

  std::string name;
  Type type = Type::ProlongationSection;
  std::string path;  // JSON pointer of the entry, for messages

  std::vector<Expr> components;  // base_section
  std::vector<Expr> X, V;        // prolongation_section (X, V) or newtonoid (X)
  std::string builtin;           // semispray | euler | energy_semispray
  std::string check;             // dynamical | newtonoid | cartan (prolongation_section)
  std::optional<Expr> f;         // conserved_function, or exactness witness
  std::optional<bool> expect;
};

const char* to_string(Candidate::Type type);

/// Expressions printed in a reference table, compared against the computed
/// values in reports. Entries are optional and sparse.
struct ReferenceValues {
  struct Entry {
    std::string quantity;      // S | N | curvature | jacobi
    std::vector<int> indices;  // 1-based, in the order the quantity is written
    Expr expr;
  };
  std::vector<Entry> entries;
};

struct IntegrateSpec {
  std::vector<double> x0, y0;
  double dt = 1e-3;
  int steps = 10000;
  double drift_tol = 1e-7;
};

struct SystemConfig {
  std::string name;
  AlgebroidDef def;
  std::optional<Expr> lagrangian;
  std::optional<std::vector<Expr>> semispray;
  std::optional<std::vector<std::vector<Expr>>> connection;  // [a][b] = N_a^b
  std::vector<Candidate> candidates;
  ReferenceValues reference;
  SampleSpec samples;
  std::optional<EvalPoint> point;
  std::optional<IntegrateSpec> integrate;
  double tolerance = 1e-8;

  /// The configured semispray, or the canonical one of the Lagrangian.
  Semispray spray() const;
  Connection nonlinear_connection() const;
  std::vector<EvalPoint> sample_points() const;
};

/// Parses a config document; `source` only labels messages. Throws
/// ConfigError with a JSON pointer for every structural or expression error.
SystemConfig parse_config(const std::string& text, const std::string& source = "config");
SystemConfig load_config(const std::string& path);

/// Parses "x=0.5,1,0;y=1,2" (also accepts ',' before y= and brackets).
EvalPoint parse_point(const std::string& text, int n, int m);

}  // namespace algmech
