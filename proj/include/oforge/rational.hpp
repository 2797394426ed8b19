#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace oforge {

// All arithmetic on moduli and edge lengths is exact.
using Rational = boost::rational<long long>;

// "5", "3/4"; denominators are never printed when equal to 1.
std::string rat_str(const Rational& r);

// Accepts "p" or "p/q" with q > 0; nullopt on anything else.
std::optional<Rational> rat_parse(std::string_view s);

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

}  // namespace oforge
