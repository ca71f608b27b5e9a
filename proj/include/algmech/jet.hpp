#pragma once

// Truncated multivariate Taylor arithmetic.
//
// A Jet of order k over d variables stores the Taylor coefficients of a
// function at a point for every monomial of total degree <= k. Arithmetic
// truncates at the smaller order of the operands; differentiation lowers the
// order by one. Derived geometric quantities (connection coefficients built
// from derivatives of a semispray, brackets of brackets, ...) are therefore
// evaluated as ordinary jet expressions, and the order bookkeeping tells how
// many derivatives are still exact.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace algmech {

/// Monomial layout and product/derivative tables for jets in `vars` variables
/// up to order `max_order`. Monomials are sorted by total degree so that a
/// jet of lower order is a prefix of the coefficient array.
class JetSpace {
 public:
  struct Product {
    std::uint32_t lhs, rhs, out;
  };
  struct Shift {
    std::uint32_t src, dst;
    double factor;
  };

  /// Shared, immutable instance. Thread-safe.
  static const JetSpace& get(int vars, int max_order);

  int vars() const { return vars_; }
  int max_order() const { return max_order_; }
  std::size_t size(int order) const { return size_by_order_[order]; }
  int degree(std::size_t monomial) const { return degrees_[monomial]; }
  std::size_t unit(int var) const { return 1 + static_cast<std::size_t>(var); }
  std::size_t pair(int u, int v) const { return pair_[u * vars_ + v]; }

  /// Product terms contributing to monomials of degree <= order.
  std::span<const Product> products(int order) const {
    return {products_.data(), product_count_[order]};
  }
  /// Coefficient moves for d/d(var), producing monomials of degree <= order.
  std::span<const Shift> derivative(int var, int order) const {
    return {shifts_[var].data(), shift_count_[var][order]};
  }

 private:
  JetSpace(int vars, int max_order);

  int vars_;
  int max_order_;
  std::vector<std::size_t> size_by_order_;
  std::vector<int> degrees_;
  std::vector<std::size_t> pair_;
  std::vector<Product> products_;
  std::vector<std::size_t> product_count_;
  std::vector<std::vector<Shift>> shifts_;
  std::vector<std::vector<std::size_t>> shift_count_;
};

class Jet {
 public:
  Jet() = default;

  static Jet constant(const JetSpace& space, int order, double value);
  static Jet variable(const JetSpace& space, int order, int var, double value);

  bool valid() const { return space_ != nullptr; }
  const JetSpace& space() const { return *space_; }
  int order() const { return order_; }
  std::span<const double> coefficients() const { return coeffs_; }

  double value() const { return coeffs_[0]; }
  /// True when every coefficient of positive degree vanishes.
  bool is_constant() const;
  bool is_zero() const { return coeffs_[0] == 0.0 && is_constant(); }
  /// First partial derivative. Requires order >= 1.
  double partial(int var) const;
  /// Second partial derivative. Requires order >= 2.
  double second(int u, int v) const;

  /// d/d(var); the result has order one less. Throws OrderError at order 0.
  Jet derivative(int var) const;
  /// Same jet truncated to `order` (must not exceed the current order).
  Jet truncated(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator*=(double rhs);

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator*(const Jet& lhs, const Jet& rhs);
  friend Jet operator/(const Jet& lhs, const Jet& rhs);
  friend Jet operator+(Jet lhs, double rhs) { return lhs += rhs; }
  friend Jet operator+(double lhs, Jet rhs) { return rhs += lhs; }
  friend Jet operator-(Jet lhs, double rhs) { return lhs += -rhs; }
  friend Jet operator-(double lhs, const Jet& rhs) { return (-rhs) += lhs; }
  friend Jet operator*(Jet lhs, double rhs) { return lhs *= rhs; }
  friend Jet operator*(double lhs, Jet rhs) { return rhs *= lhs; }
  friend Jet operator/(Jet lhs, double rhs) { return lhs *= 1.0 / rhs; }

  /// Applies the univariate function with Taylor coefficients
  /// taylor[k] = f^(k)(value())/k! to this jet.
  Jet compose(std::span<const double> taylor) const;

 private:
  Jet(const JetSpace* space, int order) : space_(space), order_(order), coeffs_(space->size(order), 0.0) {}

  const JetSpace* space_ = nullptr;
  int order_ = 0;
  std::vector<double> coeffs_;
};

// Elementary functions. The argument checks (positivity, nonzero) are the
// caller's responsibility; see eval.cpp for the domain-checked entry points.
Jet reciprocal(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double exponent);
Jet pow(const Jet& a, int exponent);

using JetVector = std::vector<Jet>;
using JetMatrix = std::vector<JetVector>;

/// Values of a vector of jets.
std::vector<double> values(const JetVector& jets);

/// Solves A x = b over jets by Gaussian elimination with partial pivoting on
/// the values. Returns false when a pivot value falls below `pivot_floor`.
bool solve_linear(JetMatrix a, JetVector b, JetVector& x, double pivot_floor);

}  // namespace algmech
