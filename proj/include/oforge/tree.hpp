#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oforge/perm.hpp"
#include "oforge/rational.hpp"
#include "oforge/sexp.hpp"
#include "oforge/value.hpp"

namespace oforge {

// ---------------------------------------------------------------------------
// Planar decorated tree, the raw presentation of a free-operad element.
// Slots are the inputs and carry the labels {1..arity}; internal vertices
// carry a decoration whose arity equals the child count. `len` is the length
// of the edge up to the parent; only non-root internal vertices of
// length-carrying instances use it.
// ---------------------------------------------------------------------------
struct TreeNode {
  bool is_slot = false;
  int label = 0;  // slots
  Dec dec;        // internal vertices
  std::optional<Rational> len;
  std::vector<TreeNode> kids;
};

class Tree {
 public:
  // The trivial tree "|": no vertices, one input wired to the output.
  static Tree trivial();
  // Single vertex with slots 1..n in planar order.
  static Tree corolla(Dec d);
  static Tree of(TreeNode root);

  bool is_trivial() const { return !root_.has_value(); }
  const TreeNode& root() const { return *root_; }
  int arity() const { return arity_; }
  int vertex_count() const;
  bool has_lengths() const;  // any edge length present

  bool operator==(const Tree& o) const;

  std::string str() const;
  static std::optional<Tree> parse(std::string_view text);

 private:
  std::optional<TreeNode> root_;
  int arity_ = 1;
};

// How a decoration transforms when its inputs are permuted (right action).
using DecAction = std::function<Dec(const Dec&, const Perm&)>;
Dec trivial_dec_action(const Dec& d, const Perm& s);

// Full operadic composition of planar trees: the slot labeled i receives
// parts[i-1] with its labels shifted past those of earlier parts. If
// `new_edge_len` is set, every edge created between a host slot position and
// a grafted root vertex gets that length.
Tree graft(const Tree& base, const std::vector<Tree>& parts,
           std::optional<Rational> new_edge_len = std::nullopt);

// Partial composition at input i: labels below i keep, the graft occupies
// i..i+arity(part)-1, labels above shift.
Tree partial_graft(const Tree& base, int i, const Tree& part,
                   std::optional<Rational> new_edge_len = std::nullopt);

// Right action on labels: input k of the result is input sigma(k) of t.
Tree act(const Tree& t, const Perm& sigma);

// Canonical representative of the planar-presentation class: children are
// ordered slots-first (numeric label order), then subtrees by code; among
// reorderings achieving that sequence the one giving the least twisted
// decoration wins. Two trees present the same abstract element iff their
// canonical forms are equal.
Tree canonical_tree(const Tree& t, const DecAction& act);
std::string canonical_code(const Tree& t, const DecAction& act);

// True exactly when act(t, sigma) equals its own canonical form. Decides the
// question by checking the canonical ordering invariants in place, without
// building the relabeled tree or its canonical form, and aborts at the first
// violation, so rejection is far cheaper than canonical_tree.
bool act_is_canonical(const Tree& t, const Perm& sigma, const DecAction& act);

}  // namespace oforge
