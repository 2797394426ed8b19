#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oforge/operad.hpp"

namespace oforge {

// Decoration action shared by the shipped instances: dual graphs relabel
// their inputs, the two-element binary collection swaps its letters under
// odd permutations, everything else is symmetric.
Dec standard_dec_act(const Dec& d, const Perm& sigma);

// Composition of corolla decorations. A missing part is the unit and reads
// as a zero-modulus annulus in whichever guise the base decoration expects.
Dec compose_decs(const Dec& base, const std::vector<std::optional<Dec>>& parts);

// Free operad on trivially decorated trees, arity 0 allowed.
OperadInstance tree_operad();

// Free operad on two binary letters a, b with the transposition swapping
// them; the smallest instance with a genuinely free action.
OperadInstance free_x2();

// Annuli with grid moduli: an arity-1 operad, composition adds moduli.
OperadInstance ann_disc();

// Smooth surfaces with boundary plus annuli; composition glues along
// boundary circles (genus adds, moduli of annular collars add).
OperadInstance fr_disc();

// Annuli with grid or infinite modulus; the infinite annulus is nodal.
OperadInstance nodann_disc();

// Stable tree-like dual graphs of nodal surfaces (with pure annuli at
// arity 1); composition glues at inputs and stabilizes.
OperadInstance nodfr_disc();

// Replaces every seam of a surface- or modulus-decorated tree by a node and
// reads off the stable dual graph of the glued nodal surface. Edge lengths
// are ignored; the tree must be non-trivial.
DualGraph erase_seams(const Tree& t);

// Forgets decorations and edge lengths, keeping the canonical labeled shape.
Tree underlying_shape(const Tree& t);

// Length-weighted trees over any instance: composition grafts with fresh
// length-1 edges. Vertex decorations are raw corolla decorations when the
// instance supports it and boxed elements otherwise.
OperadInstance w_of(const OperadInstance& base);

// The decoration action of w_of(base): boxes act through the base instance,
// raw decorations act as in the base collection.
DecAction w_dec_action(const OperadInstance& base);

// Lookup by CLI name: tree, free2, ann, fr, nodann, nodfr, or any of these
// with a "w-" prefix.
std::optional<OperadInstance> instance_by_name(const std::string& name);
std::vector<std::string> instance_names();

}  // namespace oforge
