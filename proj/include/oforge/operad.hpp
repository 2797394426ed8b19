#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oforge/tree.hpp"

namespace oforge {

// ---------------------------------------------------------------------------
// Enumeration bounds shared by instances, the rewrite engine, and the
// verifier. Grids hold exact rationals; nothing here is approximate.
// ---------------------------------------------------------------------------
struct Bounds {
  int max_arity = 4;
  int max_genus = 3;
  int max_vertices = 5;
  std::vector<Rational> modulus_grid = {Rational(0), Rational(1, 4), Rational(1, 2),
                                        Rational(1)};
  std::vector<Rational> length_grid = {Rational(0), Rational(1, 2), Rational(1)};
  int trial_count = 100;
  std::uint64_t seed = 0;
};

// A symmetric collection: bounded decoration domains per arity plus an
// evaluable right action.
struct SCollection {
  std::string name;
  std::function<std::vector<Dec>(int n, const Bounds&)> domain;
  DecAction act = trivial_dec_action;
};

// ---------------------------------------------------------------------------
// An enumerable set operad. Elements are canonical decorated trees: a base
// instance stores single corollas (plus the shared trivial-tree unit), a
// free or length-weighted instance stores whole trees. `compose` is the full
// composition; partial composition and the action derive from it.
// ---------------------------------------------------------------------------
struct OperadInstance {
  std::string name;
  SCollection collection;
  std::function<Tree(const Tree&, const std::vector<Tree>&)> compose;
  std::function<std::vector<Tree>(int n, const Bounds&)> elements;
  Tree unit = Tree::trivial();
  // Elements are single corollas, so vertex decorations of length-weighted
  // trees over this instance can stay raw instead of being boxed.
  bool corolla_decs = false;

  Tree canon(const Tree& t) const { return canonical_tree(t, collection.act); }
  std::string code(const Tree& t) const { return canonical_code(t, collection.act); }
  Tree act_on(const Tree& t, const Perm& sigma) const {
    return canon(act(t, sigma));
  }
  // u with v plugged into input i (units elsewhere).
  Tree pcomp(const Tree& u, int i, const Tree& v) const;
};

// Evaluates a tree decorated over O's collection by composing inside O,
// vertex decorations entering as single corollas; the counit of the
// free-forgetful adjunction. Works for any tree the collection decorates.
Tree counit(const OperadInstance& O, const Tree& t);

// Same evaluation with an explicit decoration-to-element map, for trees
// whose decorations denote elements of O in some other encoding.
Tree eval_tree(const Tree& t, const OperadInstance& O,
               const std::function<Tree(const TreeNode&)>& elem_of);

// ---------------------------------------------------------------------------
// Axiom checking: unit, sequential, parallel, equivariance, and the action
// laws, exhaustively over enumerated elements. The tuple space is counted
// first; exceeding the budget is an explicit error, never a silent cut.
// ---------------------------------------------------------------------------
struct AxiomViolation {
  std::string law;
  std::string tuple;
};

struct AxiomReport {
  bool budget_exceeded = false;
  std::uint64_t budget = 0;
  std::uint64_t planned = 0;  // tuple count that was (or would be) checked
  std::uint64_t checked = 0;
  std::vector<AxiomViolation> violations;

  bool ok() const { return !budget_exceeded && violations.empty(); }
};

AxiomReport check_axioms(const OperadInstance& O, const Bounds& b,
                         std::uint64_t budget = 20000000ULL);

}  // namespace oforge
