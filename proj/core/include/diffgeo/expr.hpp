#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diffgeo/errors.hpp"
#include "diffgeo/jet.hpp"
#include "diffgeo/quadrature.hpp"
#include "diffgeo/vec3.hpp"

namespace diffgeo {

enum class TokenKind { Number, Identifier, Operator, Paren, Keyword };

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t position;
  double number = 0.0;  // parsed value for Number tokens

  friend bool operator==(const Token&, const Token&) = default;
};

std::string_view to_string(TokenKind kind) noexcept;

/// Splits text into tokens. Whitespace and '#' comments are skipped.
/// Besides expression symbols, recognizes '=', ',', '[' and ']' for definition headers.
/// Throws LexError on any other character.
std::vector<Token> tokenize(std::string_view text, std::size_t base_offset = 0);

/// True for the header words curve, surface, param, const and in.
bool is_keyword(std::string_view word) noexcept;
/// True for names of elementary functions and the constant pi.
bool is_reserved(std::string_view word) noexcept;

class Expr {
 public:
  enum class Kind { Number, Variable, Constant, Negate, Binary, Call };

  struct Node {
    Kind kind = Kind::Number;
    double number = 0.0;
    std::string name;  // variable or constant name
    int slot = -1;     // bound variable index
    char op = 0;       // one of + - * / ^
    Elementary function = Elementary::Sin;
    std::shared_ptr<const Node> lhs, rhs;  // Negate and Call use lhs only
  };

  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  static Expr number(double value);
  static Expr variable(std::string name);
  static Expr constant(std::string name);
  static Expr negate(const Expr& operand);
  static Expr binary(char op, const Expr& lhs, const Expr& rhs);
  static Expr call(Elementary f, const Expr& argument);

  bool empty() const noexcept { return !root_; }
  const Node& root() const { return *root_; }

  /// Fully parenthesized text that parses back to an equal tree.
  std::string to_string() const;

  /// Resolves variables against `names` (index = slot). Throws NameError.
  Expr bind(const std::vector<std::string>& names) const;
  std::vector<std::string> variables() const;

  template <class T>
  T evaluate(std::span<const T> slots) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> root_;
};

/// Consumes the whole token stream. `end_position` is reported for errors at end of input.
Expr parse(std::span<const Token> tokens, std::size_t end_position);
Expr parse(std::span<const Token> tokens);
Expr parse_expression(std::string_view text);

namespace detail {

inline bool constant_value(double) { return true; }
template <class J>
bool constant_value(const J& x) {
  return x.is_constant();
}

template <class T>
T evaluate_node(const Expr::Node& n, std::span<const T> slots) {
  switch (n.kind) {
    case Expr::Kind::Number:
      return T(n.number);
    case Expr::Kind::Constant:
      return T(std::numbers::pi);
    case Expr::Kind::Variable:
      if (n.slot < 0 || static_cast<std::size_t>(n.slot) >= slots.size())
        throw Error(ErrorCode::Name, "unbound identifier '" + n.name + "'");
      return slots[static_cast<std::size_t>(n.slot)];
    case Expr::Kind::Negate:
      return -evaluate_node(*n.lhs, slots);
    case Expr::Kind::Call:
      return apply(n.function, evaluate_node(*n.lhs, slots));
    case Expr::Kind::Binary: {
      const T a = evaluate_node(*n.lhs, slots);
      const T b = evaluate_node(*n.rhs, slots);
      switch (n.op) {
        case '+':
          return a + b;
        case '-':
          return a - b;
        case '*':
          return a * b;
        case '/':
          if (value_of(b) == 0.0) throw Error(ErrorCode::Domain, "division by zero");
          return a / b;
        default: {
          const double p = value_of(b);
          if (constant_value(b)) return power(a, p);
          if (!(value_of(a) > 0.0))
            throw Error(ErrorCode::Domain, "power with a varying exponent needs a positive base");
          using std::exp;
          using std::log;
          return exp(b * log(a));
        }
      }
    }
  }
  return T(0.0);
}

}  // namespace detail

template <class T>
T Expr::evaluate(std::span<const T> slots) const {
  return detail::evaluate_node(*root_, slots);
}

// ---------------------------------------------------------------------------
// Definition files
// ---------------------------------------------------------------------------

enum class ShapeKind { Curve, Surface };

struct ParameterDecl {
  std::string name;
  Interval domain;
};

/// A curve or surface read from the line-oriented definition format.
struct ShapeDefinition {
  ShapeKind kind = ShapeKind::Curve;
  std::string name;
  std::vector<ParameterDecl> parameters;
  std::vector<std::pair<std::string, double>> constants;
  std::array<Expr, 3> components;  // bound: parameters first, then constants

  /// Evaluates x, y, z at parameter values (one or two entries).
  template <class T>
  Vec3T<T> evaluate(std::span<const T> params) const {
    std::vector<T> slots(params.begin(), params.end());
    for (const auto& c : constants) slots.emplace_back(c.second);
    const std::span<const T> s(slots);
    return {components[0].evaluate(s), components[1].evaluate(s), components[2].evaluate(s)};
  }
};

/// Parses a definition. Errors carry byte offsets into `text`.
ShapeDefinition load_definition(std::string_view text);

}  // namespace diffgeo
