#include <vector>

#include "doctest.h"
#include "oforge/perm.hpp"
#include "oforge/rational.hpp"
#include "oforge/surface.hpp"

using namespace oforge;

TEST_CASE("rational printing normalizes and never shows unit denominators") {
  CHECK(rat_str(Rational(3, 4)) == "3/4");
  CHECK(rat_str(Rational(2, 4)) == "1/2");
  CHECK(rat_str(Rational(5, 1)) == "5");
  CHECK(rat_str(Rational(0)) == "0");
  CHECK(rat_str(Rational(6, 3)) == "2");
}

TEST_CASE("rational parsing accepts p and p/q with positive q") {
  CHECK(rat_parse("3/4") == Rational(3, 4));
  CHECK(rat_parse("7") == Rational(7));
  CHECK(rat_parse("0") == Rational(0));
  CHECK(rat_parse("2/4") == Rational(1, 2));
  CHECK(!rat_parse(""));
  CHECK(!rat_parse("a"));
  CHECK(!rat_parse("1/0"));
  CHECK(!rat_parse("1/"));
  CHECK(!rat_parse("/2"));
  CHECK(!rat_parse("1/2/3"));
}

TEST_CASE("rational arithmetic is exact") {
  CHECK(Rational(1, 4) + Rational(1, 2) == Rational(3, 4));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) * Rational(1, 2) == Rational(1, 4));
}

TEST_CASE("extended moduli add with absorbing infinity and neutral zero") {
  Modulus a = Modulus::finite(Rational(1, 4));
  Modulus b = Modulus::finite(Rational(1, 2));
  Modulus inf = Modulus::infinite();
  Modulus zero = Modulus::finite(Rational(0));

  CHECK((a + b) == Modulus::finite(Rational(3, 4)));
  CHECK((a + zero) == a);
  CHECK((zero + a) == a);
  CHECK((a + inf).is_infinite());
  CHECK((inf + a).is_infinite());
  CHECK((inf + inf).is_infinite());

  CHECK(a < b);
  CHECK(b < inf);
  CHECK(!(inf < b));

  CHECK(a.str() == "1/4");
  CHECK(inf.str() == "inf");
  CHECK(Modulus::parse("1/4") == a);
  CHECK(Modulus::parse("inf") == inf);
  CHECK(!Modulus::parse("nope"));
}

TEST_CASE("permutation basics: images, identity, transpositions") {
  Perm id = Perm::identity(3);
  CHECK(id.is_identity());
  CHECK(id(2) == 2);

  Perm s({2, 3, 1});
  CHECK(s(1) == 2);
  CHECK(s(2) == 3);
  CHECK(s(3) == 1);
  CHECK(!s.is_identity());
  CHECK(s.str() == "[2 3 1]");

  Perm t = Perm::transposition(4, 2, 4);
  CHECK(t(1) == 1);
  CHECK(t(2) == 4);
  CHECK(t(3) == 3);
  CHECK(t(4) == 2);
}

TEST_CASE("permutation product composes images, inverse cancels") {
  Perm s({2, 1, 3});
  Perm t({1, 3, 2});
  Perm st = s * t;
  // (st)(k) = s(t(k))
  CHECK(st == Perm({2, 3, 1}));

  Perm u({3, 1, 2});
  CHECK(u.inverse() == Perm({2, 3, 1}));
  CHECK((u * u.inverse()).is_identity());
  CHECK((u.inverse() * u).is_identity());

  // associativity on a spot check
  Perm v({3, 2, 1});
  CHECK(((s * t) * v) == (s * (t * v)));
}

TEST_CASE("all_perms enumerates in lexicographic image order") {
  auto p1 = all_perms(1);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].is_identity());

  auto p3 = all_perms(3);
  REQUIRE(p3.size() == 6);
  CHECK(p3[0] == Perm({1, 2, 3}));
  CHECK(p3[1] == Perm({1, 3, 2}));
  CHECK(p3[2] == Perm({2, 1, 3}));
  CHECK(p3[3] == Perm({2, 3, 1}));
  CHECK(p3[4] == Perm({3, 1, 2}));
  CHECK(p3[5] == Perm({3, 2, 1}));

  CHECK(all_perms(4).size() == 24);
}

TEST_CASE("adjacent transpositions generate the expected list") {
  auto g = adjacent_transpositions(4);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == Perm::transposition(4, 1, 2));
  CHECK(g[1] == Perm::transposition(4, 2, 3));
  CHECK(g[2] == Perm::transposition(4, 3, 4));
}

TEST_CASE("block permutations: identity blocks and pinned examples") {
  CHECK(block_perm(Perm::identity(3), {2, 1, 2}).is_identity());
  CHECK(block_perm(Perm({2, 1}), {1, 2}) == Perm({3, 1, 2}));
  CHECK(block_perm(Perm({3, 1, 2}), {2, 1, 2}) == Perm({3, 4, 5, 1, 2}));
  // The operadic equivariance law this serves is checked in the operad tests.
}
