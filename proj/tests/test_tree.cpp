#include <string>
#include <vector>

#include "doctest.h"
#include "oforge/instances.hpp"
#include "oforge/tree.hpp"
#include "oforge/value.hpp"

using namespace oforge;

namespace {

Tree P(const std::string& s) {
  auto t = Tree::parse(s);
  REQUIRE_MESSAGE(t.has_value(), "expected parseable: " << s);
  return *t;
}

}  // namespace

TEST_CASE("trivial tree and corollas") {
  Tree id = Tree::trivial();
  CHECK(id.is_trivial());
  CHECK(id.arity() == 1);
  CHECK(id.vertex_count() == 0);
  CHECK(id.str() == "|");

  Tree c = Tree::corolla(Dec::unit(3));
  CHECK(c.arity() == 3);
  CHECK(c.vertex_count() == 1);
  CHECK(c.str() == "(_ #1 #2 #3)");

  Tree a = Tree::corolla(Dec::sym("a", 2));
  CHECK(a.str() == "(sym a n=2 #1 #2)");

  // Arity zero is legal in the tree core (only surface decorations need an
  // input): a childless vertex round-trips.
  Tree z = Tree::corolla(Dec::unit(0));
  CHECK(z.arity() == 0);
  CHECK(z.str() == "(_)");
  CHECK(Tree::parse("(_)").has_value());
  CHECK(Tree::parse("(_ )")->str() == "(_)");
}

TEST_CASE("print/parse round trips on representative words") {
  const std::vector<std::string> words = {
      "|",
      "(_ #1)",
      "(_ #2 (_ #1))",
      "(sym a n=2 #1 (sym b n=1 #2))",
      "(nod #1)",
      "(ann 3/4 #1)",
      "(nod 1/2 (ann 1/4 #1))",
      "(fr g=1 m=2 #1 (nod #2))",
      "(fr g=1 m=2 (ann 1/2 @0 #1) #2)",
      "(fr g=0 m=3 #2 (ann 1/2 @1/2 #3) #1)",
      "((dg (comp g=0 (out) (node 1)) (comp g=0 (in 1) (node 1))) #1)",
      "((dg (ann 1/2)) #1)",
      "((dg (comp g=0 (out) (node 1)) (comp g=0 (in 1) (node 1))) ((dg (comp g=1 (in 1) (out))) @1 #1))",
      "((box w-nodann (nod #1)) ((box w-fr (ann 1/2 (fr g=1 m=1 @1 #1))) #1))",
  };
  for (const auto& w : words) {
    auto t = Tree::parse(w);
    REQUIRE_MESSAGE(t.has_value(), "failed to parse: " << w);
    CHECK(t->str() == w);
    // Re-parsing the printed form is stable.
    CHECK(P(t->str()).str() == w);
  }
}

TEST_CASE("infinite annulus parses as an input alias of the node") {
  CHECK(P("(ann inf #1)").str() == "(nod #1)");
  CHECK(P("(ann inf #1)") == P("(nod #1)"));
}

TEST_CASE("malformed words are rejected") {
  const std::vector<std::string> bad = {
      "",
      "(",
      "(_ #1",
      "(_ #1 #1)",      // duplicate label
      "(_ #2)",         // labels not 1..n
      "(_ #0)",         // labels start at 1
      "(fr g=0 m=1 #1)",   // excluded unstable disc
      "(fr g=1 #1)",       // missing mark count
      "(fr g=1 m=2 #1)",   // arity mismatch with declared marks
      "(ann -1/2 #1)",     // negative modulus
      "(nod inf #1)",      // node carries no modulus token
      "(ann 1/2 @1 #1)",   // root edge cannot carry a length
      "(_ #1 @1)",         // stray length token
      "(sym a #1)",        // generator without arity
      "((box w-fr) #1)",   // box block missing its element
      "#1",                // bare slot is not a tree
  };
  for (const auto& w : bad) {
    CHECK_MESSAGE(!Tree::parse(w).has_value(), "expected reject: " << w);
  }
}

TEST_CASE("grafting composes planar trees with label shifting") {
  Tree b = P("(_ #1 #2)");
  Tree g = graft(b, {P("(_ #1 #2)"), P("(_ #1)")});
  CHECK(g.str() == "(_ (_ #1 #2) (_ #3))");
  CHECK(g.arity() == 3);

  // Trivial parts act as identities.
  CHECK(graft(b, {Tree::trivial(), Tree::trivial()}) == b);

  // Grafting onto the trivial tree returns the part.
  CHECK(graft(Tree::trivial(), {b}) == b);

  // Optional edge lengths land on the grafted roots.
  Tree gl = graft(P("(_ #1)"), {P("(_ #1)")}, Rational(1));
  CHECK(gl.str() == "(_ (_ @1 #1))");
}

TEST_CASE("partial grafting shifts only labels above the slot") {
  Tree b = P("(_ #1 #2)");
  CHECK(partial_graft(b, 2, P("(_ #1 #2)")).str() == "(_ #1 (_ #2 #3))");
  CHECK(partial_graft(b, 1, P("(_ #1 #2)")).str() == "(_ (_ #1 #2) #3)");
  CHECK(partial_graft(b, 1, Tree::trivial()) == b);

  Tree tall = partial_graft(P("(_ #2 #1)"), 1, P("(_ #1)"));
  CHECK(tall.str() == "(_ #2 (_ #1))");
}

TEST_CASE("label action: input k of the result is input sigma(k)") {
  Tree a = Tree::corolla(Dec::sym("a", 2));
  CHECK(act(a, Perm({2, 1})).str() == "(sym a n=2 #2 #1)");
  CHECK(act(P("(_ #1 #2 #3)"), Perm({2, 3, 1})).str() == "(_ #3 #1 #2)");
  CHECK(act(Tree::trivial(), Perm::identity(1)) == Tree::trivial());

  // Composition law: acting by s then t equals acting by s*t.
  Tree w = P("(_ #1 (_ #2 #3))");
  for (const auto& s : all_perms(3)) {
    for (const auto& t : all_perms(3)) {
      CHECK(act(act(w, s), t) == act(w, s * t));
    }
  }
}

TEST_CASE("canonical form identifies planar presentations") {
  const DecAction triv = trivial_dec_action;

  Tree l = P("(_ (_ #1) #2)");
  Tree r = P("(_ #2 (_ #1))");
  CHECK(canonical_code(l, triv) == canonical_code(r, triv));
  CHECK(canonical_tree(l, triv) == canonical_tree(r, triv));
  CHECK(canonical_tree(l, triv).str() == "(_ #2 (_ #1))");

  // Idempotence.
  Tree c = canonical_tree(l, triv);
  CHECK(canonical_tree(c, triv) == c);

  // Different labelings stay distinct.
  CHECK(canonical_code(P("(_ #1 (_ #2))"), triv) !=
        canonical_code(P("(_ #2 (_ #1))"), triv));

  // Length-decorated edges participate in the code.
  CHECK(canonical_code(P("(ann 1/2 (ann 1/4 @0 #1))"), triv) !=
        canonical_code(P("(ann 1/2 (ann 1/4 @1 #1))"), triv));
}

TEST_CASE("vertex counts and length detection") {
  CHECK(P("(_ #2 (_ #1))").vertex_count() == 2);
  CHECK(P("(nod 1/2 (ann 1/4 #1))").vertex_count() == 2);
  CHECK(!P("(nod 1/2 (ann 1/4 #1))").has_lengths());
  CHECK(P("(fr g=1 m=2 (ann 1/2 @0 #1) #2)").has_lengths());
  CHECK(!Tree::trivial().has_lengths());
}

TEST_CASE("tree equality is structural") {
  CHECK(P("(_ #1 #2)") == P("(_ #1 #2)"));
  CHECK(!(P("(_ #1 #2)") == P("(_ #2 #1)")));
  CHECK(!(P("(ann 1/4 #1)") == P("(ann 1/2 #1)")));
  CHECK(!(P("(_ #1)") == Tree::trivial()));
}
