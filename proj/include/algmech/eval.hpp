#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "algmech/expr.hpp"
#include "algmech/jet.hpp"

namespace algmech {

/// A point (x, y) of E in local coordinates.
struct EvalPoint {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t dim() const { return x.size() + y.size(); }
  /// Coordinate k of the combined list [x..., y...].
  double operator[](std::size_t k) const { return k < x.size() ? x[k] : y[k - x.size()]; }
};

/// Value, gradient and Hessian with respect to [x..., y...].
struct Jet2 {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

/// Plain double evaluation with the same domain rules as the jet evaluator.
double eval_value(const Expr& expr, std::span<const double> coords);
double eval_value(const Expr& expr, const EvalPoint& p);

/// Evaluates `expr` with every coordinate replaced by the matching jet.
/// Throws DomainError naming the offending subexpression.
Jet eval_jet(const Expr& expr, std::span<const Jet> coords);

/// Exact value, gradient and Hessian at p.
Jet2 eval_jet(const Expr& expr, const EvalPoint& p);

/// Central-difference estimate of gradient and Hessian with step h.
/// Test oracle only.
Jet2 finite_difference_oracle(const Expr& expr, const EvalPoint& p, double h);

}  // namespace algmech
