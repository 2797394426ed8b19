#include "oforge/sexp.hpp"

namespace oforge {

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                 text[pos] == '\n' || text[pos] == '\r'))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
};

bool atom_char(char c) {
  return c != '(' && c != ')' && c != ' ' && c != '\t' && c != '\n' && c != '\r';
}

std::variant<SExpr, ParseError> parse_one(Cursor& cur) {
  cur.skip_ws();
  if (cur.pos >= cur.text.size()) return ParseError{"unexpected end of input", cur.pos};
  char c = cur.text[cur.pos];
  if (c == ')') return ParseError{"unmatched ')'", cur.pos};
  if (c == '(') {
    ++cur.pos;
    std::vector<SExpr> items;
    while (true) {
      cur.skip_ws();
      if (cur.pos >= cur.text.size()) return ParseError{"missing ')'", cur.pos};
      if (cur.text[cur.pos] == ')') {
        ++cur.pos;
        return SExpr::list(std::move(items));
      }
      auto sub = parse_one(cur);
      if (auto* err = std::get_if<ParseError>(&sub)) return *err;
      items.push_back(std::move(std::get<SExpr>(sub)));
    }
  }
  size_t start = cur.pos;
  while (cur.pos < cur.text.size() && atom_char(cur.text[cur.pos])) ++cur.pos;
  return SExpr::make_atom(std::string(cur.text.substr(start, cur.pos - start)));
}

}  // namespace

std::variant<SExpr, ParseError> sexp_parse(std::string_view text) {
  Cursor cur{text};
  auto r = parse_one(cur);
  if (auto* err = std::get_if<ParseError>(&r)) return *err;
  if (!cur.done()) return ParseError{"trailing input after expression", cur.pos};
  return r;
}

std::variant<std::vector<SExpr>, ParseError> sexp_parse_many(std::string_view text) {
  Cursor cur{text};
  std::vector<SExpr> out;
  while (!cur.done()) {
    auto r = parse_one(cur);
    if (auto* err = std::get_if<ParseError>(&r)) return *err;
    out.push_back(std::move(std::get<SExpr>(r)));
  }
  return out;
}

std::string sexp_print(const SExpr& e) {
  if (e.is_atom) return e.atom;
  std::string s = "(";
  for (size_t i = 0; i < e.items.size(); ++i) {
    if (i) s += ' ';
    s += sexp_print(e.items[i]);
  }
  s += ')';
  return s;
}

}  // namespace oforge
