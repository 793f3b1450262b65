#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "uat/error.hpp"

namespace uat {

// Expression language for target functions of one variable x:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-assoc, exponent free of x
//   primary := number | 'x' | 'pi' | fn '(' expr ')' | '(' expr ')'
//   fn      := abs | sin | cos | exp | ln | sqrt
//
// '^' binds tighter than unary minus, so -x^2 is -(x^2). There is no
// implicit multiplication: write 2*x, not 2x.

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t length = 0;
};

enum class NodeKind { Constant, Variable, Pi, Unary, Binary };
enum class UnaryOp { Neg, Abs, Sin, Cos, Exp, Ln, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;
  UnaryOp unary = UnaryOp::Neg;
  BinaryOp binary = BinaryOp::Add;
  ExprPtr lhs;  // operand of unary nodes, left operand of binary nodes
  ExprPtr rhs;
  SourceSpan span;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Lexical, Syntax, UnknownIdentifier };

  ParseError(Kind kind, SourceSpan span, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  SourceSpan span() const noexcept { return span_; }
  std::size_t position() const noexcept { return span_.begin; }

 private:
  Kind kind_;
  SourceSpan span_;
};

/// Evaluation left the real domain (1/0, ln of a non-positive value, ...).
class ExprDomainError : public DomainError {
 public:
  ExprDomainError(const std::string& what, double input, SourceSpan span)
      : DomainError(what, input), span_(span) {}

  SourceSpan span() const noexcept { return span_; }

 private:
  SourceSpan span_;
};

/// Immutable parsed expression; cheap to copy (shares the tree).
class Expression {
 public:
  Expression() = default;
  explicit Expression(ExprPtr root) : root_(std::move(root)) {}

  const ExprNode& root() const { return *root_; }
  bool empty() const noexcept { return !root_; }

  double operator()(double x) const;

 private:
  ExprPtr root_;
};

Expression parse(std::string_view text);

/// Throws ExprDomainError instead of producing a non-finite value.
double eval(const Expression& e, double x);

/// Canonical text: binary operations fully parenthesized, constants in
/// shortest round-trip form. parse(print(e)) reproduces e's tree.
std::string print(const Expression& e);

/// Structural equality (spans ignored).
bool same_structure(const ExprNode& lhs, const ExprNode& rhs);

std::string_view help_text();

struct Interval {
  double a = 0.0;
  double b = 1.0;
};

/// Target function plus the bounds the recipe needs. Absent bounds are
/// filled in by the estimators below.
struct FunctionSpec {
  Expression f;
  std::string source;
  Interval interval;
  std::optional<double> lipschitz;
  std::optional<double> sup_bound;
  std::optional<double> modulus_override;

  double operator()(double x) const { return eval(f, x); }
};

/// Parses text and validates interval and supplied bounds.
FunctionSpec make_function_spec(std::string_view text, double a, double b,
                                std::optional<double> lipschitz = std::nullopt,
                                std::optional<double> sup_bound = std::nullopt,
                                std::optional<double> modulus_override = std::nullopt);

inline constexpr double kLipschitzSafety = 1.25;
inline constexpr double kSupSafety = 1.01;

/// 1.25 * max |f'| over `samples` uniform points, f' by central differences
/// at step (b-a)/(10 samples), clipped to [a, b] at the endpoints.
double estimate_lipschitz(const FunctionSpec& spec, std::size_t samples);

/// 1.01 * max |f| over `samples` uniform points including both endpoints.
double estimate_sup(const FunctionSpec& spec, std::size_t samples);

}  // namespace uat
