#pragma once

#include <functional>
#include <vector>

#include "oforge/operad.hpp"
#include "oforge/surface.hpp"
#include "oforge/tree.hpp"

namespace oforge {

// Genus carried by a decoration (smooth pieces, dual graphs, and boxes
// recursively; everything else 0).
int dec_genus(const Dec& d);
// Sum over all vertices.
int tree_genus(const Tree& t);

// Decoration domains per vertex arity, already filtered to the caller's
// value grids. An empty vector means no vertices of that arity.
using DomainFn = std::function<std::vector<Dec>(int k)>;

// All planar decorated trees with slots labeled 1..n in planar order, at
// most max_vertices internal vertices and total genus at most max_genus.
// The trivial tree is not included (it has no planar presentation).
std::vector<Tree> enumerate_planar_trees(int arity, int max_vertices, int max_genus,
                                         const DomainFn& domain, int max_vertex_arity);

// Streaming form of the same generation, in the same order, without
// materializing the list.
void for_each_planar_tree(int arity, int max_vertices, int max_genus,
                          const DomainFn& domain, int max_vertex_arity,
                          const std::function<void(Tree&&)>& sink);

// Canonical deduplicated free-operad elements of the given arity: every
// planar tree as above, under every relabeling, canonicalized and sorted by
// code. Includes the trivial tree (arity 1) when include_trivial.
std::vector<Tree> enumerate_elements(int arity, int max_vertices, int max_genus,
                                     const DomainFn& domain, int max_vertex_arity,
                                     const DecAction& act, bool include_trivial);

// Streaming form: calls `sink` exactly once per canonical element, in
// memory proportional to one tree. An element is emitted when a relabeled
// planar tree is its own canonical form, which singles out one presentation
// per element; the order is generation order, not code order. The trivial
// tree, when requested, comes first.
void for_each_element(int arity, int max_vertices, int max_genus,
                      const DomainFn& domain, int max_vertex_arity,
                      const DecAction& act, bool include_trivial,
                      const std::function<void(const Tree&)>& sink);

// Length-weighted variant: each non-root internal vertex takes every edge
// length from `lengths` (callers pass positive grids for canonical forms).
std::vector<Tree> enumerate_w_elements(int arity, int max_vertices, int max_genus,
                                       const DomainFn& domain, int max_vertex_arity,
                                       const std::vector<Rational>& lengths,
                                       const DecAction& act, bool include_trivial);

// Streaming form of the length-weighted variant, same contract as
// for_each_element.
void for_each_w_element(int arity, int max_vertices, int max_genus,
                        const DomainFn& domain, int max_vertex_arity,
                        const std::vector<Rational>& lengths,
                        const DecAction& act, bool include_trivial,
                        const std::function<void(const Tree&)>& sink);

// ---------------------------------------------------------------------------
// Dual graphs and marked skeletons.
// ---------------------------------------------------------------------------
struct GraphEnumOpts {
  int arity = 1;
  int max_total_genus = 3;
  int max_comps = 5;
  // Bound on the splitting-tree size: #nodes + #comps - #disc-halves, the
  // vertex count of the unique minimal piece decomposition.
  int max_dec_size = 1 << 20;
  bool require_decomposable = false;
  bool include_pure_annuli = true;
  std::vector<Rational> annulus_grid;  // finite chain moduli (arity 1 only)
};

// Stable graphs within the bounds, sorted by canonical text. The two-disc
// nodal annulus counts as a component tree, not a pure annulus.
std::vector<DualGraph> enumerate_dual_graphs(const GraphEnumOpts& o);

// Vertex count of the minimal piece decomposition: every node contributes a
// nodal-annulus piece, every component that is not one of that piece's two
// disc halves contributes a smooth piece.
int graph_dec_size(const DualGraph& g);

// Stable marked skeletons: each component needs 2g-2+#special > 0 where
// special counts marks, the output mark, and nodes.
std::vector<MarkedSkeleton> enumerate_marked_skeletons(int arity, int max_total_genus,
                                                       int max_comps);

}  // namespace oforge
