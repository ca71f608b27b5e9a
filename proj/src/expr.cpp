#include "algmech/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <set>

#include "algmech/errors.hpp"

namespace algmech {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_number(double value) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Number;
  n->number = value;
  return n;
}

const char* function_name(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Exp: return "exp";
    case Op::Log: return "ln";
    case Op::Sqrt: return "sqrt";
    default: return "";
  }
}

void collect(const ExprNode& n, std::set<int>& out) {
  if (n.op == Op::Variable) out.insert(n.var);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

bool same(const ExprNode& a, const ExprNode& b) {
  if (a.op != b.op) return false;
  if (a.op == Op::Number) return std::memcmp(&a.number, &b.number, sizeof(double)) == 0;
  if (a.op == Op::Variable) return a.var == b.var;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs) || static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs))
    return false;
  return (!a.lhs || same(*a.lhs, *b.lhs)) && (!a.rhs || same(*a.rhs, *b.rhs));
}

// Binding strength used by the printer: 1 additive, 2 multiplicative,
// 3 unary minus, 4 power, 5 atoms and function calls.
int precedence(const ExprNode& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Subtract: return 1;
    case Op::Multiply:
    case Op::Divide: return 2;
    case Op::Negate: return 3;
    case Op::Power: return 4;
    default: return 5;
  }
}

void print(const ExprNode& n, std::string& out);

void print_at_least(const ExprNode& n, int min_prec, std::string& out) {
  if (precedence(n) < min_prec) {
    out += '(';
    print(n, out);
    out += ')';
  } else {
    print(n, out);
  }
}

void print(const ExprNode& n, std::string& out) {
  switch (n.op) {
    case Op::Number: {
      char buf[32];
      auto res = std::to_chars(buf, buf + sizeof buf, n.number);
      out.append(buf, res.ptr);
      return;
    }
    case Op::Variable: out += n.name; return;
    case Op::Negate:
      out += '-';
      print_at_least(*n.lhs, 3, out);
      return;
    case Op::Add:
    case Op::Subtract:
      print_at_least(*n.lhs, 1, out);
      out += n.op == Op::Add ? " + " : " - ";
      print_at_least(*n.rhs, 2, out);
      return;
    case Op::Multiply:
    case Op::Divide:
      print_at_least(*n.lhs, 2, out);
      out += n.op == Op::Multiply ? "*" : "/";
      print_at_least(*n.rhs, 3, out);
      return;
    case Op::Power:
      print_at_least(*n.lhs, 5, out);
      out += '^';
      print_at_least(*n.rhs, 3, out);
      return;
    default:
      out += function_name(n.op);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
  }
}

class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> coords) : src_(src), coords_(coords) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    NodePtr e = expr();
    skip_ws();
    if (pos_ < src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_node(Op::Subtract, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(Op::Multiply, lhs, factor());
      } else if (accept('/')) {
        lhs = make_node(Op::Divide, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    if (accept('-')) return make_node(Op::Negate, factor());
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make_node(Op::Power, base, factor());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    double value = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) throw ParseError("malformed number", start);
    return make_number(value);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string name(src_.substr(start, pos_ - start));

    static constexpr std::pair<const char*, Op> functions[] = {
        {"sin", Op::Sin}, {"cos", Op::Cos}, {"exp", Op::Exp}, {"ln", Op::Log}, {"sqrt", Op::Sqrt}};
    for (const auto& [fname, op] : functions) {
      if (name != fname) continue;
      const std::size_t save = pos_;
      if (accept('(')) {
        NodePtr arg = expr();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        return make_node(op, arg);
      }
      pos_ = save;
    }

    auto it = std::find(coords_.begin(), coords_.end(), name);
    if (it == coords_.end()) throw UnknownIdentifierError(name, start);
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Variable;
    n->var = static_cast<int>(it - coords_.begin());
    n->name = name;
    return n;
  }

  std::string_view src_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr::Expr() : root_(make_number(0.0)) {}

Expr Expr::number(double value) { return Expr(make_number(value)); }

Expr Expr::variable(int index, std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Variable;
  n->var = index;
  n->name = std::move(name);
  return Expr(n);
}

Expr Expr::unary(Op op, const Expr& operand) { return Expr(make_node(op, operand.root_)); }

Expr Expr::binary(Op op, const Expr& lhs, const Expr& rhs) { return Expr(make_node(op, lhs.root_, rhs.root_)); }

bool Expr::depends_on(int var) const {
  std::set<int> vars;
  collect(*root_, vars);
  return vars.count(var) > 0;
}

std::vector<int> Expr::variables() const {
  std::set<int> vars;
  collect(*root_, vars);
  return {vars.begin(), vars.end()};
}

std::string Expr::str() const { return to_string(*root_); }

std::string to_string(const ExprNode& node) {
  std::string out;
  print(node, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) { return same(*a.root_, *b.root_); }

Expr operator-(const Expr& a) { return Expr::unary(Op::Negate, a); }
Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Op::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Op::Subtract, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Op::Multiply, a, b); }

Expr parse_expr(std::string_view source, std::span<const std::string> coords) {
  Parser parser(source, coords);
  return Expr(parser.parse());
}

}  // namespace algmech
