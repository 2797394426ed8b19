#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oforge/operad.hpp"

namespace oforge {

// ---------------------------------------------------------------------------
// Rewrite rules over amalgam presentations. Elements are decorated trees
// whose vertices belong to one of two sides; a shared arity-1 family maps
// into both sides and lets decorations cross over.
//
//   Contract  compose an edge whose endpoints lie on the same side
//   Flip      exchange the side of a crossover-family decoration
//   Shift     move an extremal annular piece of a weighted box across a
//             mixed junction toward the nodal side (weighted systems only)
// ---------------------------------------------------------------------------
struct RewriteRule {
  enum class Kind { Contract, Flip, Shift };
  Kind kind = Kind::Contract;
  int vertex = 0;  // preorder index over internal vertices
  int child = -1;  // planar child position for Contract/Shift
  int depth = 0;   // depth of the acted edge; innermost-first strategy key

  std::string str() const;
};

struct PushoutSystem {
  std::string name;
  bool w_mode = false;
  DecAction act = trivial_dec_action;

  // side 0 is the nodal side, side 1 the surface side.
  std::function<int(const Dec&)> side;
  std::function<bool(const Dec&)> a_image;         // may cross over
  std::function<Dec(const Dec&)> flip;             // cross over (involution)
  std::function<bool(const Dec&)> properly_nodal;  // anchors the nodal side
  // Same-side composite: parent decoration with child decoration at the given
  // 1-based input position.
  std::function<Dec(const Dec&, int, const Dec&)> merge;

  // Weighted systems only. can_shift(q, p, from_parent, slot): the annular
  // piece of q facing the junction is cuttable (unit inner edge) and p is
  // properly nodal. shift(q, p, from_parent, slot) performs the migration and
  // returns the rewritten pair (q', p').
  std::function<bool(const Dec&, const Dec&, bool, int)> can_shift;
  std::function<std::pair<Dec, Dec>(const Dec&, const Dec&, bool, int)> shift;

  // Termination-measure contribution of one vertex: how many crossover moves
  // its decoration can ever feed. Defaults to a_image ? 1 : 0 when unset.
  std::function<int(const Dec&)> a_measure;

  // Equivalence-class invariant: evaluation into the glued dual-graph
  // instance. Rewrites never change it.
  std::function<Tree(const Tree&)> invariant;

  // Class-preserving neighbor moves beyond the oriented rules, used by the
  // closure oracle: splits of one vertex into two same-side vertices.
  std::function<std::vector<Tree>(const Tree&)> expansions;

  Tree canon(const Tree& t) const { return canonical_tree(t, act); }
  std::string code(const Tree& t) const { return canonical_code(t, act); }
};

// The shipped amalgam: moduli (nodal side) against surfaces (surface side),
// glued over finite annuli. The bounds supply the modulus grid that the
// closure oracle draws expansion candidates from.
PushoutSystem surface_pushout(const Bounds& b = Bounds{});

// The same amalgam between the length-weighted instances: vertices are boxed
// weighted trees over moduli or surfaces.
PushoutSystem w_surface_pushout();

// Oriented rules applicable to t, in preorder. Empty exactly on normal forms.
std::vector<RewriteRule> applicable_rules(const PushoutSystem& sys, const Tree& t);

// Apply one rule and canonicalize.
Tree apply_rule(const PushoutSystem& sys, const Tree& t, const RewriteRule& r);

struct NormalFormResult {
  Tree tree = Tree::trivial();
  int steps = 0;
};

// Innermost-first contractions, then flips, then shifts, to a fixpoint.
// Throws if the step budget is hit (must not happen on shipped systems) and
// checks the termination measure #vertices + #crossover pieces per run.
NormalFormResult normal_form(const PushoutSystem& sys, const Tree& t,
                             int step_budget = 100000);

enum class Tri { False, True, Undecided };

// Word problem via two-sided closure under class-preserving moves
// (contractions, both flip directions, bounded expansions). True on
// intersection; False only when both closures completed within budget and
// stayed disjoint; Undecided when the budget truncated the search. A
// mismatch of invariants decides False immediately.
Tri equal_in_pushout(const PushoutSystem& sys, const Tree& a, const Tree& b,
                     std::size_t closure_budget = 20000);

// Final codes reached by applying applicable rules in seeded random order;
// a singleton on confluent inputs. Budget overruns yield a distinct code.
std::vector<std::string> confluence_sample(const PushoutSystem& sys, const Tree& t,
                                           int trials, std::uint64_t seed,
                                           int step_budget = 100000);

}  // namespace oforge
