#pragma once

#include "t2p/rational.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace t2p {

struct SourcePos {
  int line = 0;
  int col = 0;

  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(col);
  }
};

struct ParseError : std::runtime_error {
  ParseError(SourcePos pos, const std::string &msg)
      : std::runtime_error(pos.line > 0 ? pos.str() + ": " + msg : msg),
        pos(pos) {}
  SourcePos pos;
};

// Minimal s-expression value: symbols are lowercased (PDDL is
// case-insensitive), numeric tokens are parsed to exact rationals,
// everything carries its source position. Comments run from ';' to the end
// of the line.
struct SExpr {
  enum class Kind { Symbol, Number, List };

  Kind kind = Kind::List;
  std::string symbol;
  Rational number;
  std::vector<SExpr> items;
  SourcePos pos;

  bool is_symbol(std::string_view s) const {
    return kind == Kind::Symbol && symbol == s;
  }
  bool is_list() const { return kind == Kind::List; }
  bool is_call(std::string_view head) const {
    return is_list() && !items.empty() && items[0].is_symbol(head);
  }

  const SExpr &at(std::size_t i) const {
    if (!is_list() || i >= items.size())
      throw ParseError(pos, "expected at least " + std::to_string(i + 1) +
                                " elements in list");
    return items[i];
  }

  std::string dump() const;
};

// Parses a sequence of top-level s-expressions.
std::vector<SExpr> parse_sexprs(std::string_view text);

// Parses exactly one top-level s-expression.
SExpr parse_sexpr(std::string_view text);

} // namespace t2p
