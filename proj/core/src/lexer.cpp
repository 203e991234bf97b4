#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "diffgeo/expr.hpp"

namespace diffgeo {

namespace {

constexpr std::array<std::string_view, 5> kKeywords = {"curve", "surface", "param", "const", "in"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string_view to_string(TokenKind kind) noexcept {
  switch (kind) {
    case TokenKind::Number:
      return "number";
    case TokenKind::Identifier:
      return "identifier";
    case TokenKind::Operator:
      return "operator";
    case TokenKind::Paren:
      return "paren";
    case TokenKind::Keyword:
      return "keyword";
  }
  return "?";
}

bool is_keyword(std::string_view word) noexcept {
  for (auto k : kKeywords)
    if (k == word) return true;
  return false;
}

bool is_reserved(std::string_view word) noexcept {
  return word == "pi" || elementary_from_name(word).has_value();
}

std::vector<Token> tokenize(std::string_view text, std::size_t base_offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    if (digit(c) || (c == '.' && i + 1 < n && digit(text[i + 1]))) {
      while (i < n && digit(text[i])) ++i;
      if (i < n && text[i] == '.') {
        ++i;
        while (i < n && digit(text[i])) ++i;
      }
      if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (text[j] == '+' || text[j] == '-')) ++j;
        if (j < n && digit(text[j])) {
          i = j;
          while (i < n && digit(text[i])) ++i;
        }
      }
      Token t{TokenKind::Number, std::string(text.substr(start, i - start)), base_offset + start};
      t.number = std::strtod(t.lexeme.c_str(), nullptr);
      out.push_back(std::move(t));
      continue;
    }
    if (ident_start(c)) {
      while (i < n && ident_char(text[i])) ++i;
      std::string word(text.substr(start, i - start));
      const TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
      out.push_back({kind, std::move(word), base_offset + start});
      continue;
    }
    switch (c) {
      case '+':
      case '-':
      case '*':
      case '/':
      case '^':
      case '=':
      case ',':
        out.push_back({TokenKind::Operator, std::string(1, c), base_offset + start});
        ++i;
        continue;
      case '(':
      case ')':
      case '[':
      case ']':
        out.push_back({TokenKind::Paren, std::string(1, c), base_offset + start});
        ++i;
        continue;
      default:
        throw LexError(base_offset + start, c);
    }
  }
  return out;
}

}  // namespace diffgeo
