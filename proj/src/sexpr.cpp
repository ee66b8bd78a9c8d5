#include "t2p/sexpr.hpp"

#include <cctype>

namespace t2p {

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  SourcePos here() const { return SourcePos{line, col}; }

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_blank() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  static bool atom_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
           c != ')' && c != ';';
  }

  SExpr read() {
    skip_blank();
    if (eof())
      throw ParseError(here(), "unexpected end of input");
    SourcePos start = here();
    char c = peek();
    if (c == '(') {
      advance();
      SExpr list;
      list.kind = SExpr::Kind::List;
      list.pos = start;
      for (;;) {
        skip_blank();
        if (eof())
          throw ParseError(start, "unterminated list");
        if (peek() == ')') {
          advance();
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')')
      throw ParseError(start, "unmatched ')'");
    std::string token;
    while (!eof() && atom_char(peek())) {
      token.push_back(peek());
      advance();
    }
    SExpr atom;
    atom.pos = start;
    bool number_like = !token.empty() &&
                       (std::isdigit(static_cast<unsigned char>(token[0])) ||
                        token[0] == '.' ||
                        (token.size() > 1 && (token[0] == '-' || token[0] == '+') &&
                         (std::isdigit(static_cast<unsigned char>(token[1])) ||
                          token[1] == '.')));
    if (number_like) {
      auto value = Rational::parse(token);
      if (!value)
        throw ParseError(start, "invalid number '" + token + "'");
      atom.kind = SExpr::Kind::Number;
      atom.number = *value;
      return atom;
    }
    atom.kind = SExpr::Kind::Symbol;
    for (char ch : token)
      atom.symbol.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    return atom;
  }
};

} // namespace

std::string SExpr::dump() const {
  switch (kind) {
  case Kind::Symbol:
    return symbol;
  case Kind::Number:
    return number.str();
  case Kind::List: {
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i)
        out += ' ';
      out += items[i].dump();
    }
    return out + ")";
  }
  }
  return "?";
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
  Lexer lexer{text};
  std::vector<SExpr> out;
  for (;;) {
    lexer.skip_blank();
    if (lexer.eof())
      return out;
    out.push_back(lexer.read());
  }
}

SExpr parse_sexpr(std::string_view text) {
  auto all = parse_sexprs(text);
  if (all.size() != 1)
    throw ParseError(SourcePos{1, 1}, "expected exactly one expression, got " +
                                          std::to_string(all.size()));
  return std::move(all[0]);
}

} // namespace t2p
