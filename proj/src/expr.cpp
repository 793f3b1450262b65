#include "uat/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "uat/numfmt.hpp"

namespace uat {

ParseError::ParseError(Kind kind, SourceSpan span, const std::string& message)
    : std::runtime_error(message + " at position " + std::to_string(span.begin)),
      kind_(kind),
      span_(span) {}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  SourceSpan span;
  double number = 0.0;
  std::string_view text;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      auto digits = [&] {
        std::size_t n = 0;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i, ++n;
        return n;
      };
      std::size_t mantissa = digits();
      if (i < src.size() && src[i] == '.') {
        ++i;
        mantissa += digits();
      }
      if (mantissa == 0) {
        throw ParseError(ParseError::Kind::Lexical, {start, i - start}, "malformed number");
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        ++i;
        if (i < src.size() && (src[i] == '+' || src[i] == '-')) ++i;
        if (digits() == 0) {
          throw ParseError(ParseError::Kind::Lexical, {start, i - start}, "malformed exponent");
        }
      }
      double value = 0.0;
      const auto res = std::from_chars(src.data() + start, src.data() + i, value);
      if (res.ec != std::errc{} || !std::isfinite(value)) {
        throw ParseError(ParseError::Kind::Lexical, {start, i - start}, "number out of range");
      }
      out.push_back({Tok::Number, {start, i - start}, value, src.substr(start, i - start)});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::Ident, {start, i - start}, 0.0, src.substr(start, i - start)});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw ParseError(ParseError::Kind::Lexical, {start, 1},
                         std::string("unexpected character '") + c + "'");
    }
    ++i;
    out.push_back({kind, {start, 1}, 0.0, src.substr(start, 1)});
  }
  out.push_back({Tok::End, {src.size(), 0}, 0.0, {}});
  return out;
}

struct FunctionName {
  std::string_view name;
  UnaryOp op;
};

constexpr std::array<FunctionName, 6> kFunctions{{{"abs", UnaryOp::Abs},
                                                  {"sin", UnaryOp::Sin},
                                                  {"cos", UnaryOp::Cos},
                                                  {"exp", UnaryOp::Exp},
                                                  {"ln", UnaryOp::Ln},
                                                  {"sqrt", UnaryOp::Sqrt}}};

std::string_view unary_name(UnaryOp op) {
  for (const auto& f : kFunctions) {
    if (f.op == op) return f.name;
  }
  return "-";
}

SourceSpan join(SourceSpan l, SourceSpan r) {
  const std::size_t end = std::max(l.begin + l.length, r.begin + r.length);
  return {l.begin, end - l.begin};
}

bool mentions_variable(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Variable: return true;
    case NodeKind::Unary: return mentions_variable(*n.lhs);
    case NodeKind::Binary: return mentions_variable(*n.lhs) || mentions_variable(*n.rhs);
    default: return false;
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr parse_all() {
    ExprPtr root = expr();
    if (peek().kind != Tok::End) fail(peek(), "unexpected token '" + std::string(peek().text) + "'");
    return root;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    if (t.kind == Tok::End) {
      throw ParseError(ParseError::Kind::Syntax, t.span, "unexpected end of input");
    }
    throw ParseError(ParseError::Kind::Syntax, t.span, message);
  }

  static ExprPtr make_binary(BinaryOp op, ExprPtr l, ExprPtr r) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Binary;
    n->binary = op;
    n->span = join(l->span, r->span);
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  static ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceSpan span) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Unary;
    n->unary = op;
    n->span = join(span, operand->span);
    n->lhs = std::move(operand);
    return n;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const BinaryOp op = take().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make_binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const BinaryOp op = take().kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      lhs = make_binary(op, std::move(lhs), unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      const SourceSpan span = take().span;
      return make_unary(UnaryOp::Neg, unary(), span);
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (peek().kind != Tok::Caret) return base;
    take();
    ExprPtr exponent = unary();
    if (mentions_variable(*exponent)) {
      throw ParseError(ParseError::Kind::Syntax, exponent->span,
                       "exponent must not depend on x");
    }
    return make_binary(BinaryOp::Pow, std::move(base), std::move(exponent));
  }

  ExprPtr primary() {
    const Token& t = take();
    auto leaf = [&](NodeKind kind, double value) {
      auto n = std::make_shared<ExprNode>();
      n->kind = kind;
      n->value = value;
      n->span = t.span;
      return n;
    };
    switch (t.kind) {
      case Tok::Number: return leaf(NodeKind::Constant, t.number);
      case Tok::LParen: {
        ExprPtr inner = expr();
        if (peek().kind != Tok::RParen) fail(peek(), "expected ')'");
        take();
        return inner;
      }
      case Tok::Ident: {
        if (t.text == "x") return leaf(NodeKind::Variable, 0.0);
        if (t.text == "pi") return leaf(NodeKind::Pi, std::numbers::pi);
        for (const auto& f : kFunctions) {
          if (f.name != t.text) continue;
          if (peek().kind != Tok::LParen) fail(peek(), "expected '(' after " + std::string(f.name));
          take();
          ExprPtr arg = expr();
          if (peek().kind != Tok::RParen) fail(peek(), "expected ')'");
          const SourceSpan close = take().span;
          ExprPtr n = make_unary(f.op, std::move(arg), t.span);
          auto widened = std::make_shared<ExprNode>(*n);
          widened->span = join(t.span, close);
          return widened;
        }
        throw ParseError(ParseError::Kind::UnknownIdentifier, t.span,
                         "unknown identifier '" + std::string(t.text) + "'");
      }
      default: fail(t, "unexpected token '" + std::string(t.text) + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

[[noreturn]] void domain_fail(const ExprNode& n, double x, const char* what) {
  throw ExprDomainError(std::string(what) + " (expression span " + std::to_string(n.span.begin) +
                            "+" + std::to_string(n.span.length) + ", x = " + format_double(x) + ")",
                        x, n.span);
}

double checked(const ExprNode& n, double x, double value) {
  if (!std::isfinite(value)) domain_fail(n, x, "non-finite result");
  return value;
}

double eval_node(const ExprNode& n, double x) {
  switch (n.kind) {
    case NodeKind::Constant:
    case NodeKind::Pi: return n.value;
    case NodeKind::Variable: return x;
    case NodeKind::Unary: {
      const double v = eval_node(*n.lhs, x);
      switch (n.unary) {
        case UnaryOp::Neg: return -v;
        case UnaryOp::Abs: return std::abs(v);
        case UnaryOp::Sin: return std::sin(v);
        case UnaryOp::Cos: return std::cos(v);
        case UnaryOp::Exp: return checked(n, x, std::exp(v));
        case UnaryOp::Ln:
          if (!(v > 0.0)) domain_fail(n, x, "ln of a non-positive value");
          return std::log(v);
        case UnaryOp::Sqrt:
          if (v < 0.0) domain_fail(n, x, "sqrt of a negative value");
          return std::sqrt(v);
      }
      break;
    }
    case NodeKind::Binary: {
      const double l = eval_node(*n.lhs, x);
      const double r = eval_node(*n.rhs, x);
      switch (n.binary) {
        case BinaryOp::Add: return checked(n, x, l + r);
        case BinaryOp::Sub: return checked(n, x, l - r);
        case BinaryOp::Mul: return checked(n, x, l * r);
        case BinaryOp::Div:
          if (r == 0.0) domain_fail(n, x, "division by zero");
          return checked(n, x, l / r);
        case BinaryOp::Pow: return checked(n, x, std::pow(l, r));
      }
      break;
    }
  }
  domain_fail(n, x, "malformed expression node");
}

void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Constant: out += format_double(n.value); return;
    case NodeKind::Variable: out += 'x'; return;
    case NodeKind::Pi: out += "pi"; return;
    case NodeKind::Unary:
      if (n.unary == UnaryOp::Neg) {
        // Parenthesized so a negated base of '^' keeps its grouping.
        out += "(-";
        print_node(*n.lhs, out);
        out += ')';
      } else {
        out += unary_name(n.unary);
        out += '(';
        print_node(*n.lhs, out);
        out += ')';
      }
      return;
    case NodeKind::Binary: {
      static constexpr std::array<const char*, 5> kOps{" + ", " - ", " * ", " / ", " ^ "};
      out += '(';
      print_node(*n.lhs, out);
      out += kOps[static_cast<std::size_t>(n.binary)];
      print_node(*n.rhs, out);
      out += ')';
      return;
    }
  }
}

}  // namespace

double Expression::operator()(double x) const { return eval(*this, x); }

Expression parse(std::string_view text) { return Expression(Parser(lex(text)).parse_all()); }

double eval(const Expression& e, double x) {
  if (e.empty()) throw InvalidArgument("eval: empty expression");
  if (!std::isfinite(x)) throw InvalidArgument("eval: x must be finite");
  return eval_node(e.root(), x);
}

std::string print(const Expression& e) {
  std::string out;
  if (!e.empty()) print_node(e.root(), out);
  return out;
}

bool same_structure(const ExprNode& l, const ExprNode& r) {
  if (l.kind != r.kind) return false;
  switch (l.kind) {
    case NodeKind::Constant: return l.value == r.value;
    case NodeKind::Variable:
    case NodeKind::Pi: return true;
    case NodeKind::Unary: return l.unary == r.unary && same_structure(*l.lhs, *r.lhs);
    case NodeKind::Binary:
      return l.binary == r.binary && same_structure(*l.lhs, *r.lhs) &&
             same_structure(*l.rhs, *r.rhs);
  }
  return false;
}

std::string_view help_text() {
  return "Expressions in x:\n"
         "  expr    := term (('+' | '-') term)*\n"
         "  term    := unary (('*' | '/') unary)*\n"
         "  unary   := '-' unary | power\n"
         "  power   := primary ('^' unary)?   (right-assoc; exponent may not contain x)\n"
         "  primary := number | x | pi | fn '(' expr ')' | '(' expr ')'\n"
         "  fn      := abs | sin | cos | exp | ln | sqrt\n"
         "No implicit multiplication: write 2*x.\n";
}

FunctionSpec make_function_spec(std::string_view text, double a, double b,
                                std::optional<double> lipschitz, std::optional<double> sup_bound,
                                std::optional<double> modulus_override) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw InvalidArgument("make_function_spec: interval requires finite a < b");
  }
  if (lipschitz && !(*lipschitz > 0.0 && std::isfinite(*lipschitz))) {
    throw InvalidArgument("make_function_spec: Lipschitz constant must be positive");
  }
  if (sup_bound && !(*sup_bound >= 0.0 && std::isfinite(*sup_bound))) {
    throw InvalidArgument("make_function_spec: sup bound must be non-negative");
  }
  if (modulus_override && !(*modulus_override > 0.0 && std::isfinite(*modulus_override))) {
    throw InvalidArgument("make_function_spec: modulus override must be positive");
  }
  return {parse(text), std::string(text), {a, b}, lipschitz, sup_bound, modulus_override};
}

namespace {

double grid_point(const Interval& iv, std::size_t j, std::size_t samples) {
  if (j + 1 == samples) return iv.b;
  return iv.a + (iv.b - iv.a) * (double(j) / double(samples - 1));
}

}  // namespace

double estimate_lipschitz(const FunctionSpec& spec, std::size_t samples) {
  if (samples < 100) throw InvalidArgument("estimate_lipschitz: samples must be >= 100");
  const auto& iv = spec.interval;
  const double step = (iv.b - iv.a) / (10.0 * double(samples));
  double best = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double x = grid_point(iv, j, samples);
    const double lo = std::max(iv.a, x - step);
    const double hi = std::min(iv.b, x + step);
    best = std::max(best, std::abs((spec(hi) - spec(lo)) / (hi - lo)));
  }
  // A constant function is L-Lipschitz for every L > 0.
  constexpr double kFloor = 1e-12;
  return std::max(kLipschitzSafety * best, kFloor);
}

double estimate_sup(const FunctionSpec& spec, std::size_t samples) {
  if (samples < 100) throw InvalidArgument("estimate_sup: samples must be >= 100");
  double best = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    best = std::max(best, std::abs(spec(grid_point(spec.interval, j, samples))));
  }
  return kSupSafety * best;
}

}  // namespace uat
