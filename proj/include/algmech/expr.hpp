#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace algmech {

enum class Op : std::uint8_t {
  Number,
  Variable,
  Negate,
  Add,
  Subtract,
  Multiply,
  Divide,
  Power,
  Sin,
  Cos,
  Exp,
  Log,
  Sqrt,
};

struct ExprNode {
  Op op = Op::Number;
  double number = 0.0;
  int var = -1;
  std::string name;
  std::shared_ptr<const ExprNode> lhs;  // operand of unary ops and functions
  std::shared_ptr<const ExprNode> rhs;
};

/// Immutable expression tree over coordinates identified by index into the
/// coordinate list the expression was parsed against.
class Expr {
 public:
  Expr();  // the literal 0

  static Expr number(double value);
  static Expr variable(int index, std::string name);
  static Expr unary(Op op, const Expr& operand);
  static Expr binary(Op op, const Expr& lhs, const Expr& rhs);

  const ExprNode& root() const { return *root_; }

  bool is_number() const { return root_->op == Op::Number; }
  bool is_zero() const { return is_number() && root_->number == 0.0; }
  bool depends_on(int var) const;
  /// Sorted indices of the coordinates occurring in the tree.
  std::vector<int> variables() const;
  /// Canonical text form; parse(str()) reproduces the tree.
  std::string str() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend Expr parse_expr(std::string_view source, std::span<const std::string> coords);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}
  std::shared_ptr<const ExprNode> root_;
};

/// Text form of a subtree, as used in error messages.
std::string to_string(const ExprNode& node);

Expr operator-(const Expr& a);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);

/// Recursive-descent parser for
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | power
///   power  := atom ("^" factor)?
///   atom   := number | ident | func "(" expr ")" | "(" expr ")"
///   func   := sin | cos | exp | ln | sqrt
/// Throws ParseError or UnknownIdentifierError.
Expr parse_expr(std::string_view source, std::span<const std::string> coords);

}  // namespace algmech
