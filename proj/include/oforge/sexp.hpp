#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace oforge {

// Minimal s-expression reader shared by every text format in the project.
// An expression is an atom (any run of non-space, non-paren characters) or a
// parenthesized list. Interpretation of atoms is left to the callers.
struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExpr> items;

  static SExpr make_atom(std::string s) { return SExpr{true, std::move(s), {}}; }
  static SExpr list(std::vector<SExpr> xs) { return SExpr{false, "", std::move(xs)}; }
};

struct ParseError {
  std::string message;
  size_t position = 0;
};

// Parses exactly one expression; trailing whitespace allowed, trailing
// garbage is an error.
std::variant<SExpr, ParseError> sexp_parse(std::string_view text);

// Parses a whitespace-separated sequence of expressions.
std::variant<std::vector<SExpr>, ParseError> sexp_parse_many(std::string_view text);

std::string sexp_print(const SExpr& e);

}  // namespace oforge
