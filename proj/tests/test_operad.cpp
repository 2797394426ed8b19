#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "oforge/enumerate.hpp"
#include "oforge/instances.hpp"
#include "oforge/operad.hpp"

using namespace oforge;

namespace {

Tree P(const std::string& s) {
  auto t = Tree::parse(s);
  REQUIRE_MESSAGE(t.has_value(), "expected parseable: " << s);
  return *t;
}

Bounds small_bounds() {
  Bounds b;
  b.max_arity = 3;
  b.max_genus = 1;
  b.max_vertices = 2;
  b.modulus_grid = {Rational(0), Rational(1, 2)};
  return b;
}

}  // namespace

TEST_CASE("instance lookup covers every name and rejects others") {
  auto names = instance_names();
  REQUIRE(names.size() == 12);
  std::vector<std::string> expect = {"tree", "free2", "ann", "fr", "nodann", "nodfr"};
  for (const auto& base : expect) {
    CHECK(std::count(names.begin(), names.end(), base) == 1);
    CHECK(std::count(names.begin(), names.end(), "w-" + base) == 1);
  }
  for (const auto& n : names) {
    auto inst = instance_by_name(n);
    REQUIRE(inst.has_value());
    CHECK(inst->name == n);
  }
  CHECK(!instance_by_name("disc"));
  CHECK(!instance_by_name(""));
  CHECK(!instance_by_name("w-"));
}

TEST_CASE("element counts per arity at small bounds") {
  Bounds b = small_bounds();
  auto count3 = [&](const OperadInstance& O) {
    return std::vector<std::size_t>{O.elements(1, b).size(), O.elements(2, b).size(),
                                    O.elements(3, b).size()};
  };
  CHECK(count3(tree_operad()) == std::vector<std::size_t>{4, 5, 8});
  CHECK(count3(free_x2()) == std::vector<std::size_t>{1, 2, 12});
  CHECK(count3(ann_disc()) == std::vector<std::size_t>{3, 0, 0});
  CHECK(count3(fr_disc()) == std::vector<std::size_t>{4, 2, 2});
  CHECK(count3(nodann_disc()) == std::vector<std::size_t>{4, 0, 0});
  CHECK(count3(nodfr_disc()) == std::vector<std::size_t>{7, 8, 10});
}

TEST_CASE("weighted element counts per arity at small bounds") {
  Bounds b = small_bounds();
  b.max_arity = 2;
  auto count2 = [&](const char* name) {
    auto O = instance_by_name(name);
    REQUIRE(O.has_value());
    return std::vector<std::size_t>{O->elements(1, b).size(), O->elements(2, b).size()};
  };
  CHECK(count2("w-tree") == std::vector<std::size_t>{38, 76});
  CHECK(count2("w-free2") == std::vector<std::size_t>{1, 2});
  CHECK(count2("w-ann") == std::vector<std::size_t>{11, 0});
  CHECK(count2("w-fr") == std::vector<std::size_t>{20, 32});
  CHECK(count2("w-nodann") == std::vector<std::size_t>{22, 0});
  CHECK(count2("w-nodfr") == std::vector<std::size_t>{61, 224});
}

TEST_CASE("elements are canonical, deduplicated, and sorted") {
  Bounds b = small_bounds();
  const OperadInstance O = nodfr_disc();
  std::vector<Tree> elems = O.elements(1, b);
  std::vector<std::string> codes;
  for (const Tree& e : elems) {
    CHECK(O.canon(e) == e);
    codes.push_back(e.str());
  }
  CHECK(std::is_sorted(codes.begin(), codes.end()));
  CHECK(std::adjacent_find(codes.begin(), codes.end()) == codes.end());
}

TEST_CASE("axiom tuple plans are stable at small bounds") {
  Bounds b = small_bounds();
  auto planned = [&](const OperadInstance& O) {
    // A zero budget reports the planned tuple count without running.
    AxiomReport r = check_axioms(O, b, 0);
    CHECK(r.budget_exceeded);
    CHECK(r.checked == 0);
    return r.planned;
  };
  CHECK(planned(tree_operad()) == 149825);
  CHECK(planned(free_x2()) == 115701);
  CHECK(planned(ann_disc()) == 39);
  CHECK(planned(fr_disc()) == 4364);
  CHECK(planned(nodann_disc()) == 80);
  CHECK(planned(nodfr_disc()) == 411949);
}

TEST_CASE("axioms hold exhaustively for the light surface instances") {
  Bounds b = small_bounds();
  for (const OperadInstance& O : {ann_disc(), fr_disc(), nodann_disc()}) {
    AxiomReport r = check_axioms(O, b);
    CHECK_MESSAGE(r.ok(), O.name << ": " << (r.violations.empty()
                                                 ? "budget"
                                                 : r.violations.front().law + " on " +
                                                       r.violations.front().tuple));
    CHECK(r.checked == r.planned);
  }
}

TEST_CASE("a corrupted composition is caught by the axiom checker") {
  OperadInstance bad = ann_disc();
  auto good = bad.compose;
  // Leak half the modulus whenever two genuine annuli meet: the unit law
  // compose(u; id) == u now fails for every positive modulus.
  bad.compose = [good](const Tree& u, const std::vector<Tree>& parts) {
    Tree out = good(u, parts);
    if (out.is_trivial() || out.root().dec.kind != Dec::Kind::Srf) return out;
    const SurfaceDec& s = out.root().dec.srf;
    if (s.kind() != SurfaceDec::Kind::Annulus) return out;
    TreeNode root = out.root();
    root.dec = Dec::surface(SurfaceDec::annulus(Rational(0)));
    return Tree::of(root);
  };
  Bounds b = small_bounds();
  AxiomReport r = check_axioms(bad, b);
  CHECK(!r.ok());
  CHECK(!r.violations.empty());
}

TEST_CASE("composition is equivariant against the block permutation") {
  Bounds b = small_bounds();
  // compose(u . s; v_1..v_k) == compose(u; v_{s(1)}..v_{s(k)}) . block_perm(s, sizes)
  // with sizes the arities of v_1..v_k as written on the left.
  auto law = [](const OperadInstance& O, const Tree& u, const std::vector<Tree>& v,
                const Perm& s) {
    std::vector<Tree> permuted;
    std::vector<int> sizes;
    for (std::size_t j = 1; j <= v.size(); ++j)
      permuted.push_back(v[static_cast<std::size_t>(s(static_cast<int>(j))) - 1]);
    for (const Tree& part : v) sizes.push_back(part.arity());
    Tree lhs = O.canon(O.compose(O.act_on(u, s), v));
    Tree rhs = O.act_on(O.compose(u, permuted), block_perm(s, sizes));
    return lhs == rhs;
  };

  const OperadInstance T = tree_operad();
  Tree u2 = P("(_ #1 #2)");
  std::vector<Tree> mixed = {P("(_ #1)"), P("(_ #1 #2 #3)")};
  for (const Perm& s : all_perms(2)) CHECK(law(T, u2, mixed, s));

  Tree u3 = P("(_ #1 #2 #3)");
  std::vector<Tree> mixed3 = {P("(_ #1 #2)"), Tree::trivial(), P("(_ (_ #1))")};
  for (const Perm& s : all_perms(3)) CHECK(law(T, u3, mixed3, s));

  const OperadInstance F = free_x2();
  Tree a = Tree::corolla(Dec::sym("a", 2));
  Tree bb = Tree::corolla(Dec::sym("b", 2));
  std::vector<Tree> parts = {a, bb};
  for (const Perm& s : all_perms(2)) CHECK(law(F, a, parts, s));

  const OperadInstance N = nodfr_disc();
  std::vector<Tree> elems = N.elements(2, b);
  REQUIRE(!elems.empty());
  std::vector<Tree> units = {N.elements(1, b).front(), elems.front()};
  for (const Perm& s : all_perms(2)) CHECK(law(N, elems.front(), units, s));
}

TEST_CASE("the two-letter collection twists under odd permutations") {
  Dec a = Dec::sym("a", 2);
  CHECK(standard_dec_act(a, Perm::identity(2)) == a);
  CHECK(standard_dec_act(a, Perm({2, 1})) == Dec::sym("b", 2));
  CHECK(standard_dec_act(Dec::sym("b", 2), Perm({2, 1})) == a);

  const OperadInstance F = free_x2();
  CHECK(F.act_on(Tree::corolla(a), Perm({2, 1})).str() == "(sym b n=2 #1 #2)");
}

TEST_CASE("unit laws for partial composition") {
  const OperadInstance F = fr_disc();
  Tree srf = P("(fr g=1 m=2 #1 #2)");
  CHECK(F.pcomp(srf, 1, F.unit) == srf);
  CHECK(F.pcomp(srf, 2, F.unit) == srf);
  CHECK(F.pcomp(F.unit, 1, srf) == srf);

  const OperadInstance T = tree_operad();
  Tree w = P("(_ #2 (_ #1))");
  CHECK(T.pcomp(w, 1, T.unit) == w);
  CHECK(T.pcomp(T.unit, 1, w) == w);
}

TEST_CASE("sequential composition agrees with nested partial composition") {
  const OperadInstance F = fr_disc();
  Tree ann = [&] { return P("(ann 1/2 #1)"); }();
  // One full composite, two partial routes.
  Tree full = F.canon(F.compose(P("(fr g=0 m=2 #1 #2)"),
                                {P("(ann 1/2 #1)"), P("(fr g=1 m=1 #1)")}));
  Tree via1 = F.pcomp(F.pcomp(P("(fr g=0 m=2 #1 #2)"), 2, P("(fr g=1 m=1 #1)")), 1,
                      P("(ann 1/2 #1)"));
  CHECK(full == via1);
  CHECK(full.str() == "(fr g=1 m=2 #1 #2)");

  CHECK(F.pcomp(ann, 1, P("(ann 1/3 #1)")).str() == "(ann 5/6 #1)");
}

TEST_CASE("decoration composition on surface corollas") {
  Dec half = Dec::surface(SurfaceDec::annulus(Rational(1, 2)));
  Dec third = Dec::surface(SurfaceDec::annulus(Rational(1, 3)));
  Dec got = compose_decs(half, {third});
  CHECK(got.srf.str() == "ann 5/6");

  Dec torus2 = Dec::surface(SurfaceDec::smooth(1, 2));
  Dec big = compose_decs(
      torus2, {Dec::surface(SurfaceDec::smooth(2, 1)), Dec::surface(SurfaceDec::smooth(0, 3))});
  CHECK(big.srf.str() == "fr g=3 m=4");

  // A missing part reads as the unit annulus.
  Dec kept = compose_decs(torus2, {std::nullopt, std::nullopt});
  CHECK(kept.srf.str() == "fr g=1 m=2");
}

TEST_CASE("tree evaluation is the identity on the free instance") {
  const OperadInstance T = tree_operad();
  Tree w = P("(_ #2 (_ #1))");
  CHECK(counit(T, w) == w);
  CHECK(counit(T, Tree::trivial()) == Tree::trivial());
}

TEST_CASE("tree evaluation composes decorated words down to corollas") {
  CHECK(counit(fr_disc(), P("(ann 1/2 (ann 1/4 #1))")).str() == "(ann 3/4 #1)");
  CHECK(counit(fr_disc(), P("(fr g=1 m=2 (ann 1/2 #1) (fr g=0 m=2 #2 #3))")).str() ==
        "(fr g=1 m=3 #1 #2 #3)");
  // Words over the nodal instance carry dual-graph decorations; gluing the
  // two-disc nodal annulus onto a torus keeps the node.
  CHECK(counit(nodfr_disc(),
               P("((dg (comp g=0 (out) (node 1)) (comp g=0 (in 1) (node 1))) "
                 "((dg (comp g=1 (in 1) (out))) #1))"))
            .str() ==
        "((dg (comp g=0 (out) (node 1)) (comp g=1 (in 1) (node 1))) #1)");
}

TEST_CASE("seam erasure reads off the glued dual graph") {
  auto dg = [](const std::string& w) { return erase_seams(P(w)).str(); };
  CHECK(dg("(nod #1)") ==
        "(dg (comp g=0 (out) (node 1)) (comp g=0 (in 1) (node 1)))");
  CHECK(dg("(ann 1/4 #1)") == "(dg (ann 1/4))");
  CHECK(dg("(nod 1/2 (ann 1/4 #1))") == "(dg (ann 3/4))");
  CHECK(dg("(fr g=1 m=1 (nod #1))") ==
        "(dg (comp g=1 (out) (node 1)) (comp g=0 (in 1) (node 1)))");
  CHECK(dg("(fr g=1 m=2 (ann 1/2 #1) (nod (fr g=0 m=2 #2 #3)))") ==
        "(dg (comp g=1 (in 1) (out) (node 1)) (comp g=0 (in 2 3) (node 1)))");
}

TEST_CASE("underlying shape forgets decorations and lengths") {
  CHECK(underlying_shape(P("(fr g=1 m=2 (ann 1/2 @0 #1) #2)")).str() == "(_ #2 (_ #1))");
  CHECK(underlying_shape(P("(nod 1/2 (ann 1/4 #1))")).str() == "(_ (_ #1))");
  CHECK(underlying_shape(Tree::trivial()) == Tree::trivial());
}

TEST_CASE("streamed elements match an independent canonical-code census") {
  // The census recomputes every element the slow way: canonicalize every
  // relabeling of every planar tree and deduplicate through a set. It shares
  // no code with the fixed-point filter the streaming path uses.
  Bounds b = small_bounds();
  for (const char* name : {"fr", "nodfr", "free2", "tree"}) {
    const OperadInstance O = *instance_by_name(name);
    auto domain = [&](int k) { return O.collection.domain(k, b); };
    for (int n = 1; n <= 3; ++n) {
      std::set<std::string> census;
      for (const Tree& p : enumerate_planar_trees(n, b.max_vertices, b.max_genus,
                                                  domain, b.max_arity))
        for (const Perm& s : all_perms(n))
          census.insert(canonical_code(act(p, s), O.collection.act));
      if (n == 1) census.insert(Tree::trivial().str());
      std::vector<Tree> got =
          enumerate_elements(n, b.max_vertices, b.max_genus, domain, b.max_arity,
                             O.collection.act, n == 1);
      REQUIRE(got.size() == census.size());
      std::size_t i = 0;
      for (const std::string& code : census) CHECK(got[i++].str() == code);
    }
  }
}

TEST_CASE("the in-place canonical test agrees with canonicalization") {
  Bounds b = small_bounds();
  for (const char* name : {"free2", "nodfr", "tree"}) {
    const OperadInstance O = *instance_by_name(name);
    auto domain = [&](int k) { return O.collection.domain(k, b); };
    for (int n = 2; n <= 3; ++n)
      for (const Tree& p : enumerate_planar_trees(n, b.max_vertices, b.max_genus,
                                                  domain, b.max_arity))
        for (const Perm& s : all_perms(n)) {
          Tree t = act(p, s);
          CHECK(act_is_canonical(p, s, O.collection.act) ==
                (canonical_tree(t, O.collection.act) == t));
        }
  }

  // Runs of identical subtrees make the decoration-minimality branch live:
  // the letter decoration twists under the swap of its two equal children.
  const DecAction& A = standard_dec_act;
  for (const char* word : {"(sym a n=0)", "(sym b n=0)", "(sym a n=2 (sym a n=0) (sym a n=0))",
                           "(sym b n=2 (sym a n=0) (sym a n=0))",
                           "(sym a n=2 (sym b n=0) (sym b n=0))",
                           "(sym a n=2 #1 (sym a n=1 #2))", "(sym b n=2 (sym a n=1 #2) #1)"}) {
    Tree t = P(word);
    for (const Perm& s : all_perms(t.arity()))
      CHECK(act_is_canonical(t, s, A) ==
            (canonical_tree(act(t, s), A) == act(t, s)));
  }
}
