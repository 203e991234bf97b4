#include <algorithm>

#include "diffgeo/expr.hpp"

namespace diffgeo {

namespace {

struct Line {
  std::vector<Token> tokens;
  std::size_t end;
};

[[noreturn]] void name_error(const std::string& msg, std::size_t pos) {
  throw Error(ErrorCode::Name, msg + " at byte " + std::to_string(pos), {static_cast<double>(pos)});
}

bool is_sym(const Token& t, std::string_view s) {
  return (t.kind == TokenKind::Operator || t.kind == TokenKind::Paren) && t.lexeme == s;
}

class DefinitionReader {
 public:
  explicit DefinitionReader(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t stop = text.find('\n', start);
      if (stop == std::string_view::npos) stop = text.size();
      auto toks = tokenize(text.substr(start, stop - start), start);
      if (!toks.empty()) lines_.push_back({std::move(toks), stop});
      start = stop + 1;
    }
    text_end_ = text.size();
  }

  ShapeDefinition read() {
    if (lines_.empty()) throw ParseError(text_end_, {"'curve'", "'surface'"}, "empty definition");
    ShapeDefinition def;
    read_header(lines_[0], def);
    std::array<bool, 3> have{};
    std::array<std::size_t, 3> where{};
    std::array<Expr, 3> raw;
    for (std::size_t i = 1; i < lines_.size(); ++i) {
      const Line& line = lines_[i];
      const Token& first = line.tokens[0];
      if (first.kind == TokenKind::Keyword && first.lexeme == "param") {
        read_param(line, def);
      } else if (first.kind == TokenKind::Keyword && first.lexeme == "const") {
        read_const(line, def);
      } else if (first.kind == TokenKind::Identifier && (first.lexeme == "x" || first.lexeme == "y" ||
                                                          first.lexeme == "z")) {
        const int c = first.lexeme[0] - 'x';
        if (have[c]) name_error("duplicate component '" + first.lexeme + "'", first.position);
        if (line.tokens.size() < 2 || !is_sym(line.tokens[1], "="))
          throw ParseError(line.tokens.size() < 2 ? line.end : line.tokens[1].position, {"'='"});
        raw[c] = parse(std::span(line.tokens).subspan(2), line.end);
        have[c] = true;
        where[c] = first.position;
      } else {
        throw ParseError(first.position, {"'param'", "'const'", "'x'", "'y'", "'z'"},
                         "unexpected '" + first.lexeme + "'");
      }
    }
    const std::size_t want = def.kind == ShapeKind::Curve ? 1 : 2;
    if (def.parameters.size() != want)
      throw Error(ErrorCode::Arity,
                  std::string(def.kind == ShapeKind::Curve ? "a curve needs exactly 1" : "a surface needs exactly 2") +
                      " parameter declaration(s), found " + std::to_string(def.parameters.size()));
    std::vector<std::string> names;
    for (const auto& p : def.parameters) names.push_back(p.name);
    for (const auto& c : def.constants) names.push_back(c.first);
    for (int c = 0; c < 3; ++c) {
      if (!have[c])
        throw ParseError(text_end_, {std::string("'") + char('x' + c) + " ='"},
                         std::string("missing component ") + char('x' + c));
      try {
        def.components[c] = raw[c].bind(names);
      } catch (const Error& e) {
        name_error(e.what(), where[c]);
      }
    }
    return def;
  }

 private:
  void read_header(const Line& line, ShapeDefinition& def) {
    const Token& t = line.tokens[0];
    if (t.kind != TokenKind::Keyword || (t.lexeme != "curve" && t.lexeme != "surface"))
      throw ParseError(t.position, {"'curve'", "'surface'"}, "unexpected '" + t.lexeme + "'");
    def.kind = t.lexeme == "curve" ? ShapeKind::Curve : ShapeKind::Surface;
    if (line.tokens.size() < 2 || line.tokens[1].kind != TokenKind::Identifier)
      throw ParseError(line.tokens.size() < 2 ? line.end : line.tokens[1].position, {"identifier"});
    if (line.tokens.size() > 2) throw ParseError(line.tokens[2].position, {"end of line"});
    def.name = line.tokens[1].lexeme;
  }

  void check_new_name(const Token& t, const ShapeDefinition& def) {
    if (t.kind != TokenKind::Identifier) throw ParseError(t.position, {"identifier"}, "unexpected '" + t.lexeme + "'");
    if (is_reserved(t.lexeme)) name_error("'" + t.lexeme + "' is a reserved word", t.position);
    if (t.lexeme == "x" || t.lexeme == "y" || t.lexeme == "z")
      name_error("'" + t.lexeme + "' names a component", t.position);
    for (const auto& p : def.parameters)
      if (p.name == t.lexeme) name_error("duplicate name '" + t.lexeme + "'", t.position);
    for (const auto& c : def.constants)
      if (c.first == t.lexeme) name_error("duplicate name '" + t.lexeme + "'", t.position);
  }

  // Constant expressions may use pi and earlier constants.
  double constant_value(std::span<const Token> toks, std::size_t end, const ShapeDefinition& def) {
    Expr e = parse(toks, end);
    std::vector<std::string> names;
    std::vector<double> values;
    for (const auto& c : def.constants) {
      names.push_back(c.first);
      values.push_back(c.second);
    }
    const std::size_t pos = toks.empty() ? end : toks.front().position;
    try {
      e = e.bind(names);
    } catch (const Error& err) {
      name_error(err.what(), pos);
    }
    return e.evaluate(std::span<const double>(values));
  }

  void read_param(const Line& line, ShapeDefinition& def) {
    const auto& t = line.tokens;
    if (t.size() < 2) throw ParseError(line.end, {"identifier"});
    check_new_name(t[1], def);
    if (t.size() < 3 || t[2].kind != TokenKind::Keyword || t[2].lexeme != "in")
      throw ParseError(t.size() < 3 ? line.end : t[2].position, {"'in'"});
    if (t.size() < 4 || !is_sym(t[3], "[")) throw ParseError(t.size() < 4 ? line.end : t[3].position, {"'['"});
    std::size_t comma = 0, close = 0;
    int depth = 0;
    for (std::size_t i = 4; i < t.size(); ++i) {
      if (is_sym(t[i], "(")) ++depth;
      if (is_sym(t[i], ")")) --depth;
      if (depth == 0 && is_sym(t[i], ",") && !comma) comma = i;
      if (depth == 0 && is_sym(t[i], "]")) {
        close = i;
        break;
      }
    }
    if (!comma) throw ParseError(close ? t[close].position : line.end, {"','"});
    if (!close) throw ParseError(line.end, {"']'"});
    if (close + 1 < t.size()) throw ParseError(t[close + 1].position, {"end of line"});
    const std::span<const Token> all(t);
    const double a = constant_value(all.subspan(4, comma - 4), t[comma].position, def);
    const double b = constant_value(all.subspan(comma + 1, close - comma - 1), t[close].position, def);
    if (!(a < b)) throw Error(ErrorCode::InvalidArgument, "parameter interval must satisfy a < b", {a, b});
    def.parameters.push_back({t[1].lexeme, {a, b}});
  }

  void read_const(const Line& line, ShapeDefinition& def) {
    const auto& t = line.tokens;
    if (t.size() < 2) throw ParseError(line.end, {"identifier"});
    check_new_name(t[1], def);
    if (t.size() < 3 || !is_sym(t[2], "=")) throw ParseError(t.size() < 3 ? line.end : t[2].position, {"'='"});
    const double v = constant_value(std::span(t).subspan(3), line.end, def);
    def.constants.emplace_back(t[1].lexeme, v);
  }

  std::vector<Line> lines_;
  std::size_t text_end_ = 0;
};

}  // namespace

ShapeDefinition load_definition(std::string_view text) { return DefinitionReader(text).read(); }

}  // namespace diffgeo
