#include <cstdio>
#include <functional>
#include <set>

#include "diffgeo/expr.hpp"

namespace diffgeo {

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

const std::vector<std::string> kExpectOperand = {"number", "identifier", "'('", "'-'"};

class Parser {
 public:
  Parser(std::span<const Token> tokens, std::size_t end) : toks_(tokens), end_(end) {}

  Expr run() {
    Expr e = expr();
    if (pos_ < toks_.size()) throw ParseError(here(), {"operator", "end of input"}, "unexpected '" + peek()->lexeme + "'");
    return e;
  }

 private:
  const Token* peek() const { return pos_ < toks_.size() ? &toks_[pos_] : nullptr; }
  std::size_t here() const { return pos_ < toks_.size() ? toks_[pos_].position : end_; }
  bool is_op(std::string_view s) const {
    const Token* t = peek();
    return t && (t->kind == TokenKind::Operator || t->kind == TokenKind::Paren) && t->lexeme == s;
  }

  Expr expr() {
    Expr lhs = term();
    while (is_op("+") || is_op("-")) {
      const char op = toks_[pos_++].lexeme[0];
      lhs = Expr::binary(op, lhs, term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (is_op("*") || is_op("/")) {
      const char op = toks_[pos_++].lexeme[0];
      lhs = Expr::binary(op, lhs, unary());
    }
    return lhs;
  }

  Expr unary() {
    if (is_op("-")) {
      ++pos_;
      return Expr::negate(unary());
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (is_op("^")) {
      ++pos_;
      return Expr::binary('^', base, unary());
    }
    return base;
  }

  Expr atom() {
    const Token* t = peek();
    if (!t) throw ParseError(end_, kExpectOperand, "unexpected end of input");
    if (t->kind == TokenKind::Number) {
      ++pos_;
      return Expr::number(t->number);
    }
    if (t->kind == TokenKind::Identifier) {
      ++pos_;
      const auto fn = elementary_from_name(t->lexeme);
      if (fn) {
        if (!is_op("("))
          throw Error(ErrorCode::Arity, "function '" + t->lexeme + "' takes one argument at byte " +
                                            std::to_string(t->position),
                      {static_cast<double>(t->position)});
        ++pos_;
        Expr arg = expr();
        if (is_op(","))
          throw Error(ErrorCode::Arity, "function '" + t->lexeme + "' takes exactly one argument at byte " +
                                            std::to_string(here()),
                      {static_cast<double>(here())});
        expect(")");
        return Expr::call(*fn, arg);
      }
      if (is_op("("))
        throw Error(ErrorCode::Name, "unknown function '" + t->lexeme + "' at byte " + std::to_string(t->position),
                    {static_cast<double>(t->position)});
      if (t->lexeme == "pi") return Expr::constant("pi");
      return Expr::variable(t->lexeme);
    }
    if (is_op("(")) {
      ++pos_;
      Expr inner = expr();
      expect(")");
      return inner;
    }
    throw ParseError(t->position, kExpectOperand, "unexpected '" + t->lexeme + "'");
  }

  void expect(std::string_view s) {
    if (!is_op(s)) {
      const Token* t = peek();
      throw ParseError(here(), {"'" + std::string(s) + "'", "operator"},
                       t ? "unexpected '" + t->lexeme + "'" : "unexpected end of input");
    }
    ++pos_;
  }

  std::span<const Token> toks_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case Expr::Kind::Number:
      out += format_number(n.number);
      return;
    case Expr::Kind::Variable:
    case Expr::Kind::Constant:
      out += n.name;
      return;
    case Expr::Kind::Negate:
      out += "(-";
      print(*n.lhs, out);
      out += ')';
      return;
    case Expr::Kind::Call:
      out += name(n.function);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
    case Expr::Kind::Binary:
      out += '(';
      print(*n.lhs, out);
      out += n.op;
      print(*n.rhs, out);
      out += ')';
      return;
  }
}

bool equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Number:
      return a.number == b.number;
    case Expr::Kind::Variable:
    case Expr::Kind::Constant:
      return a.name == b.name;
    case Expr::Kind::Negate:
      return equal(*a.lhs, *b.lhs);
    case Expr::Kind::Call:
      return a.function == b.function && equal(*a.lhs, *b.lhs);
    case Expr::Kind::Binary:
      return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
  return false;
}

NodePtr bind_node(const NodePtr& n, const std::vector<std::string>& names) {
  auto copy = std::make_shared<Node>(*n);
  if (n->kind == Expr::Kind::Variable) {
    copy->slot = -1;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n->name) copy->slot = static_cast<int>(i);
    if (copy->slot < 0) throw Error(ErrorCode::Name, "undeclared identifier '" + n->name + "'");
  }
  if (n->lhs) copy->lhs = bind_node(n->lhs, names);
  if (n->rhs) copy->rhs = bind_node(n->rhs, names);
  return copy;
}

void collect(const Node& n, std::set<std::string>& out) {
  if (n.kind == Expr::Kind::Variable) out.insert(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

}  // namespace

Expr Expr::number(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->number = value;
  return Expr(n);
}

Expr Expr::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  return Expr(n);
}

Expr Expr::constant(std::string name) {
  if (name != "pi") throw Error(ErrorCode::Name, "unknown constant '" + name + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->name = std::move(name);
  return Expr(n);
}

Expr Expr::negate(const Expr& operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->lhs = operand.root_;
  return Expr(n);
}

Expr Expr::binary(char op, const Expr& lhs, const Expr& rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->op = op;
  n->lhs = lhs.root_;
  n->rhs = rhs.root_;
  return Expr(n);
}

Expr Expr::call(Elementary f, const Expr& argument) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->function = f;
  n->lhs = argument.root_;
  return Expr(n);
}

std::string Expr::to_string() const {
  std::string out;
  if (root_) print(*root_, out);
  return out;
}

Expr Expr::bind(const std::vector<std::string>& names) const { return Expr(bind_node(root_, names)); }

std::vector<std::string> Expr::variables() const {
  std::set<std::string> s;
  if (root_) collect(*root_, s);
  return {s.begin(), s.end()};
}

bool operator==(const Expr& a, const Expr& b) {
  if (!a.root_ || !b.root_) return !a.root_ && !b.root_;
  return equal(*a.root_, *b.root_);
}

Expr parse(std::span<const Token> tokens, std::size_t end_position) { return Parser(tokens, end_position).run(); }

Expr parse(std::span<const Token> tokens) {
  const std::size_t end = tokens.empty() ? 0 : tokens.back().position + tokens.back().lexeme.size();
  return parse(tokens, end);
}

Expr parse_expression(std::string_view text) {
  const auto tokens = tokenize(text);
  return parse(tokens, text.size());
}

}  // namespace diffgeo
