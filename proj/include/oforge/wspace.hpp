#pragma once

#include <vector>

#include "oforge/operad.hpp"

namespace oforge {

// Wrap a base element as a vertex decoration of a length-weighted tree, and
// back. Instances whose elements are corollas keep their raw decorations;
// anything else is boxed.
Dec w_dec_of(const OperadInstance& base, const Tree& elem);
Tree w_elem_of(const OperadInstance& base, const Dec& d);

// Composition of length-weighted trees: graft with fresh length-1 edges.
Tree w_compose(const OperadInstance& base, const Tree& u,
               const std::vector<Tree>& parts);

// Number of internal edges of length zero.
int w_zero_edge_count(const Tree& t);

// Contract the k-th length-zero edge (preorder), composing the endpoint
// decorations in the base instance. No canonicalization, so positions of the
// remaining zero edges stay meaningful across successive calls.
Tree w_contract_once(const OperadInstance& base, const Tree& t, int k);

// Contract every length-zero edge to a fixpoint and canonicalize. The result
// is independent of contraction order; tests check all orders.
Tree w_contract(const OperadInstance& base, const Tree& t);

// Forget lengths and evaluate in the base instance.
Tree w_counit(const OperadInstance& base, const Tree& t);

// Seam-removal normal form for weighted trees over surface decorations,
// implemented by cluster counting rather than pairwise composition: vertices
// joined by zero-weight seams merge into one piece whose genus is the sum
// and whose inputs are the edges leaving the cluster; all-annulus clusters
// stay annuli with summed moduli. Cross-checked against w_contract.
Tree hd_normalize(const Tree& t);

// Every decoration carrying nodes is exactly a one-node two-disc graph:
// each node is squeezed between seams.
bool w_is_protected(const Tree& t);

}  // namespace oforge
