#include "algmech/eval.hpp"

#include <cmath>

#include "algmech/errors.hpp"

namespace algmech {

namespace {

// Integer exponents are expanded by repeated multiplication; anything else is
// a real power and needs a positive base.
bool integer_exponent(const ExprNode& e, int& out) {
  double v;
  if (e.op == Op::Number) {
    v = e.number;
  } else if (e.op == Op::Negate && e.lhs->op == Op::Number) {
    v = -e.lhs->number;
  } else {
    return false;
  }
  if (v != std::floor(v) || std::abs(v) > 1024.0) return false;
  out = static_cast<int>(v);
  return true;
}

bool constant_exponent(const ExprNode& e, double& out) {
  if (e.op == Op::Number) {
    out = e.number;
    return true;
  }
  if (e.op == Op::Negate && e.lhs->op == Op::Number) {
    out = -e.lhs->number;
    return true;
  }
  return false;
}

double power_int(double base, int exponent) {
  const bool invert = exponent < 0;
  unsigned k = static_cast<unsigned>(invert ? -exponent : exponent);
  double result = 1.0;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return invert ? 1.0 / result : result;
}

double value_of(const ExprNode& n, std::span<const double> c) {
  switch (n.op) {
    case Op::Number: return n.number;
    case Op::Variable: return c[n.var];
    case Op::Negate: return -value_of(*n.lhs, c);
    case Op::Add: return value_of(*n.lhs, c) + value_of(*n.rhs, c);
    case Op::Subtract: return value_of(*n.lhs, c) - value_of(*n.rhs, c);
    case Op::Multiply: return value_of(*n.lhs, c) * value_of(*n.rhs, c);
    case Op::Divide: {
      const double d = value_of(*n.rhs, c);
      if (d == 0.0) throw DomainError("division by zero", to_string(n));
      return value_of(*n.lhs, c) / d;
    }
    case Op::Power: {
      const double base = value_of(*n.lhs, c);
      int k;
      if (integer_exponent(*n.rhs, k)) {
        if (k < 0 && base == 0.0) throw DomainError("division by zero", to_string(n));
        return power_int(base, k);
      }
      if (base <= 0.0) throw DomainError("real power of a non-positive base", to_string(n));
      return std::pow(base, value_of(*n.rhs, c));
    }
    case Op::Sin: return std::sin(value_of(*n.lhs, c));
    case Op::Cos: return std::cos(value_of(*n.lhs, c));
    case Op::Exp: return std::exp(value_of(*n.lhs, c));
    case Op::Log: {
      const double a = value_of(*n.lhs, c);
      if (a <= 0.0) throw DomainError("logarithm of a non-positive argument", to_string(n));
      return std::log(a);
    }
    case Op::Sqrt: {
      const double a = value_of(*n.lhs, c);
      if (a < 0.0) throw DomainError("square root of a negative argument", to_string(n));
      return std::sqrt(a);
    }
  }
  return 0.0;
}

Jet jet_of(const ExprNode& n, std::span<const Jet> c) {
  const JetSpace& space = c[0].space();
  const int order = c[0].order();
  switch (n.op) {
    case Op::Number: return Jet::constant(space, order, n.number);
    case Op::Variable: return c[n.var];
    case Op::Negate: return -jet_of(*n.lhs, c);
    case Op::Add: return jet_of(*n.lhs, c) + jet_of(*n.rhs, c);
    case Op::Subtract: return jet_of(*n.lhs, c) - jet_of(*n.rhs, c);
    case Op::Multiply: {
      // Scalar factors skip the full jet product.
      if (n.lhs->op == Op::Number) return n.lhs->number * jet_of(*n.rhs, c);
      if (n.rhs->op == Op::Number) return jet_of(*n.lhs, c) * n.rhs->number;
      return jet_of(*n.lhs, c) * jet_of(*n.rhs, c);
    }
    case Op::Divide: {
      const Jet d = jet_of(*n.rhs, c);
      if (d.value() == 0.0) throw DomainError("division by zero", to_string(n));
      if (n.rhs->op == Op::Number) return jet_of(*n.lhs, c) / d.value();
      return jet_of(*n.lhs, c) / d;
    }
    case Op::Power: {
      const Jet base = jet_of(*n.lhs, c);
      int k;
      if (integer_exponent(*n.rhs, k)) {
        if (k < 0 && base.value() == 0.0) throw DomainError("division by zero", to_string(n));
        return pow(base, k);
      }
      if (base.value() <= 0.0) throw DomainError("real power of a non-positive base", to_string(n));
      double e;
      if (constant_exponent(*n.rhs, e)) return pow(base, e);
      return exp(jet_of(*n.rhs, c) * log(base));
    }
    case Op::Sin: return sin(jet_of(*n.lhs, c));
    case Op::Cos: return cos(jet_of(*n.lhs, c));
    case Op::Exp: return exp(jet_of(*n.lhs, c));
    case Op::Log: {
      const Jet a = jet_of(*n.lhs, c);
      if (a.value() <= 0.0) throw DomainError("logarithm of a non-positive argument", to_string(n));
      return log(a);
    }
    case Op::Sqrt: {
      const Jet a = jet_of(*n.lhs, c);
      if (a.value() < 0.0 || (a.value() == 0.0 && a.order() > 0))
        throw DomainError("square root of a non-positive argument", to_string(n));
      return sqrt(a);
    }
  }
  return Jet::constant(space, order, 0.0);
}

std::vector<double> flatten(const EvalPoint& p) {
  std::vector<double> c(p.x);
  c.insert(c.end(), p.y.begin(), p.y.end());
  return c;
}

}  // namespace

double eval_value(const Expr& expr, std::span<const double> coords) { return value_of(expr.root(), coords); }

double eval_value(const Expr& expr, const EvalPoint& p) { return eval_value(expr, flatten(p)); }

Jet eval_jet(const Expr& expr, std::span<const Jet> coords) {
  if (coords.empty()) {
    const JetSpace& space = JetSpace::get(0, 0);
    const Jet zero = Jet::constant(space, 0, 0.0);
    return jet_of(expr.root(), std::span<const Jet>(&zero, 1));
  }
  return jet_of(expr.root(), coords);
}

Jet2 eval_jet(const Expr& expr, const EvalPoint& p) {
  const int d = static_cast<int>(p.dim());
  const JetSpace& space = JetSpace::get(d, 2);
  JetVector coords;
  coords.reserve(d);
  for (int k = 0; k < d; ++k) coords.push_back(Jet::variable(space, 2, k, p[k]));

  Jet2 out;
  out.grad.setZero(d);
  out.hess.setZero(d, d);
  if (d == 0) {
    out.value = eval_value(expr, p);
    return out;
  }
  const Jet j = eval_jet(expr, coords);
  out.value = j.value();
  for (int u = 0; u < d; ++u) {
    out.grad(u) = j.partial(u);
    for (int v = 0; v < d; ++v) out.hess(u, v) = j.second(u, v);
  }
  return out;
}

Jet2 finite_difference_oracle(const Expr& expr, const EvalPoint& p, double h) {
  const std::vector<double> base = flatten(p);
  const std::size_t d = base.size();
  auto f = [&](std::size_t i, double di, std::size_t j, double dj) {
    std::vector<double> q = base;
    if (i < d) q[i] += di;
    if (j < d) q[j] += dj;
    return eval_value(expr, q);
  };

  Jet2 out;
  out.value = eval_value(expr, base);
  out.grad.setZero(d);
  out.hess.setZero(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const double fp = f(i, h, d, 0), fm = f(i, -h, d, 0);
    out.grad(i) = (fp - fm) / (2 * h);
    out.hess(i, i) = (fp - 2 * out.value + fm) / (h * h);
    for (std::size_t j = 0; j < i; ++j) {
      const double v = (f(i, h, j, h) - f(i, h, j, -h) - f(i, -h, j, h) + f(i, -h, j, -h)) / (4 * h * h);
      out.hess(i, j) = v;
      out.hess(j, i) = v;
    }
  }
  return out;
}

}  // namespace algmech
