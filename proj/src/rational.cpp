#include "oforge/rational.hpp"

#include <cstdlib>

namespace oforge {

std::string rat_str(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) {
    s += '/';
    s += std::to_string(r.denominator());
  }
  return s;
}

std::optional<Rational> rat_parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  auto parse_int = [](std::string_view t, long long& out) -> bool {
    if (t.empty()) return false;
    size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    long long v = 0;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
      v = v * 10 + (t[i] - '0');
    }
    out = (t[0] == '-') ? -v : v;
    return true;
  };
  size_t slash = s.find('/');
  long long num = 0, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_int(s, num)) return std::nullopt;
  } else {
    if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
    if (den <= 0) return std::nullopt;
  }
  return Rational(num, den);
}

}  // namespace oforge
