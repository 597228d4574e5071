#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tangential {

using Complex = std::complex<double>;

enum class UnaryOp { Neg, Sin, Cos, Exp, Log, Abs, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div };

struct ExprNode;

/// Immutable expression tree over the single real variable x.
///
/// Nodes are shared between trees, so copying an Expr is cheap and a tree
/// may be read from several threads at once. The static constructors build
/// nodes verbatim; the free builders further down fold constants and drop
/// 0/1 identities, which is what differentiation uses.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(Complex value);
  static Expr variable();
  static Expr unary(UnaryOp op, Expr arg);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr power(Expr base, int exponent);

  const ExprNode& node() const { return *node_; }

  bool is_constant() const;
  bool is_constant(double value) const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ConstantNode {
  Complex value;
};
struct VariableNode {};
struct UnaryNode {
  UnaryOp op;
  Expr arg;
};
struct BinaryNode {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};
struct PowerNode {
  Expr base;
  int exponent;
};

struct ExprNode {
  std::variant<ConstantNode, VariableNode, UnaryNode, BinaryNode, PowerNode> data;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& subexpression, double x, const std::string& reason);
  double x() const { return x_; }
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
  double x_;
};

class DifferentiationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Expr parse(std::string_view text);

/// Fully parenthesized text that parses back to a structurally identical tree.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

Complex evaluate(const Expr& e, double x);

/// Throws DifferentiationError if the tree contains abs.
Expr differentiate(const Expr& e);

/// [e, e', ..., e^(order)]
std::vector<Expr> derivatives(const Expr& e, int order);

bool contains_abs(const Expr& e);
std::size_t node_count(const Expr& e);

// Simplifying builders.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent);
Expr apply(UnaryOp op, const Expr& arg);

/// re + i*im for a complex-valued target given as two real expressions.
Expr combine_complex(const Expr& re, const Expr& im);

}  // namespace tangential
