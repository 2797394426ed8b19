#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oforge/perm.hpp"
#include "oforge/rational.hpp"
#include "oforge/sexp.hpp"

namespace oforge {

// ---------------------------------------------------------------------------
// Extended modulus: a nonnegative rational or infinity. Addition is the
// composition law of annulus chains; infinity (a node) absorbs, zero (a
// degenerate annulus) is neutral.
// ---------------------------------------------------------------------------
class Modulus {
 public:
  Modulus() : inf_(false), q_(0) {}
  static Modulus finite(const Rational& q);
  static Modulus infinite() {
    Modulus m;
    m.inf_ = true;
    return m;
  }

  bool is_infinite() const { return inf_; }
  const Rational& value() const { return q_; }  // valid only when finite

  Modulus operator+(const Modulus& o) const;
  bool operator==(const Modulus& o) const;
  bool operator<(const Modulus& o) const;  // finite < infinite, else by value

  std::string str() const;  // "3/4" | "inf"
  static std::optional<Modulus> parse(std::string_view s);

 private:
  bool inf_;
  Rational q_;
};

// ---------------------------------------------------------------------------
// Decoration of a single framed-surface piece: a smooth surface of genus g
// with m >= 1 input boundary circles and one output circle, an annulus with
// its exact modulus, or a nodal annulus. Genus-0 one-input pieces are
// annuli, never Smooth; the constructor enforces this.
// ---------------------------------------------------------------------------
class SurfaceDec {
 public:
  enum class Kind { Smooth, Annulus, Nodal };

  static SurfaceDec smooth(int genus, int inputs);
  static SurfaceDec annulus(const Rational& q);
  static SurfaceDec nodal();

  Kind kind() const { return kind_; }
  int genus() const { return genus_; }
  int inputs() const { return inputs_; }
  const Rational& modulus() const { return modulus_; }
  int arity() const { return kind_ == Kind::Smooth ? inputs_ : 1; }

  bool operator==(const SurfaceDec& o) const;
  bool operator<(const SurfaceDec& o) const;

  std::string str() const;  // "fr g=1 m=2" | "ann 1/2" | "nod"

 private:
  Kind kind_ = Kind::Annulus;
  int genus_ = 0;
  int inputs_ = 1;
  Rational modulus_ = Rational(0);
};

// Composition in the framed-surface operad on piece decorations: genus adds,
// pure annulus chains add moduli exactly, and an annulus glued to anything
// else is absorbed (its modulus forgotten). parts.size() must equal
// base.arity().
SurfaceDec fr_compose(const SurfaceDec& base, const std::vector<SurfaceDec>& parts);

// ---------------------------------------------------------------------------
// DualGraph: a stable tree-like nodal framed surface, coarsely. Either a pure
// annulus chain carrying its exact extended modulus, or a tree of components
// joined at nodes, rooted at the component carrying the output circle. Input
// circles carry the labels {1..arity}. Interior components (no boundary)
// must satisfy 2g - 2 + #nodes > 0; stabilize() contracts violators.
// ---------------------------------------------------------------------------
struct CompNode {
  int genus = 0;
  std::vector<int> inputs;         // ascending labels
  std::vector<CompNode> children;  // node edges, canonical order

  bool operator==(const CompNode& o) const;
};

class DualGraph {
 public:
  // Pure annulus chain; infinite modulus means a bare nodal annulus.
  static DualGraph annulus(const Modulus& m);
  // General form; the root component carries the output. Children are
  // re-sorted into canonical order; inputs must form {1..arity}.
  static DualGraph of(CompNode root);

  bool is_annulus_chain() const { return static_cast<bool>(ann_); }
  const Modulus& annulus_modulus() const { return *ann_; }
  const CompNode& root() const { return *root_; }

  int arity() const;
  int total_genus() const;
  int node_count() const;
  int component_count() const;
  // True when every component keeps at least one downward circle
  // (#inputs + #child nodes >= 1), i.e. the graph is a gluing of
  // arity >= 1 pieces.
  bool decomposable() const;
  bool is_stable() const;

  DualGraph relabel(const Perm& sigma) const;  // right action on input labels

  std::string str() const;  // canonical "(dg ...)" form
  static std::optional<DualGraph> parse(const SExpr& e);

  bool operator==(const DualGraph& o) const;
  bool operator<(const DualGraph& o) const { return str() < o.str(); }

 private:
  std::optional<Modulus> ann_;
  std::optional<CompNode> root_;
};

// Operadic composition: glue each part's output circle into the base input
// circle with the same label, merge the two components smoothly (genus adds),
// relabel inputs by concatenation, then stabilize. Annulus chains absorb or
// are absorbed as in fr_compose.
DualGraph nodfr_compose(const DualGraph& base, const std::vector<DualGraph>& parts);

// Contracts every unstable interior component (genus 0 with one node: delete;
// genus 0 with two nodes: merge the nodes). Iterates to a fixpoint; the
// result is stable and independent of contraction order.
DualGraph stabilize(const DualGraph& g);

// Embeddings of the smaller instances.
DualGraph graph_of_surface(const SurfaceDec& d);
DualGraph graph_of_modulus(const Modulus& m);

// ---------------------------------------------------------------------------
// MarkedSkeleton: a stable tree-like curve with marked points instead of
// boundary (the skeleton of a closed nodal marked surface). Every component
// must satisfy 2g - 2 + #special > 0, special = marks + output + nodes.
// ---------------------------------------------------------------------------
class MarkedSkeleton {
 public:
  static MarkedSkeleton of(CompNode root);  // root carries the output mark

  const CompNode& root() const { return root_; }
  int arity() const;
  int total_genus() const;
  bool is_stable() const;

  std::string str() const;  // canonical "(mk ...)" form
  static std::optional<MarkedSkeleton> parse(const SExpr& e);

  bool operator==(const MarkedSkeleton& o) const { return root_ == o.root_; }

 private:
  CompNode root_;
};

// Replaces every marked point by a parametrized boundary circle. Rejects the
// one skeleton shape with no framed counterpart: a single genus-0 component
// with one input (the twice-marked sphere).
std::optional<DualGraph> fr_map(const MarkedSkeleton& s);

// Caps every boundary circle with a marked disc and stabilizes the resulting
// marked curve. Marks on contracted components migrate to the attaching
// node. `degenerate` is set when everything stabilizes away (a pure annulus
// chain: the twice-marked sphere has no stable model).
struct CapResult {
  std::optional<MarkedSkeleton> skeleton;
  bool degenerate = false;
};
CapResult cap_map(const DualGraph& g);

}  // namespace oforge
