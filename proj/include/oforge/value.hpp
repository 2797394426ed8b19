#pragma once

#include <memory>
#include <string>

#include "oforge/surface.hpp"

namespace oforge {

class Tree;

// ---------------------------------------------------------------------------
// Vertex decoration. One variant covers every instance the engine ships:
//   Unit   the single n-ary operation of the terminal collection
//   Sym    a named generator with a group action supplied by its collection
//   Mod    an extended annulus modulus (the nodal-annuli instance)
//   Srf    a framed-surface piece (the framed-surfaces instance)
//   Graph  a stable dual graph (the nodal-surfaces instance)
//   Box    an opaque element of another instance, used when one instance's
//          elements decorate another's trees; compares by canonical code
// ---------------------------------------------------------------------------
struct Dec {
  enum class Kind { Unit, Sym, Mod, Srf, Graph, Box };

  Kind kind = Kind::Unit;
  int n = 1;  // arity

  std::string name;  // Sym
  Modulus mod;       // Mod
  SurfaceDec srf = SurfaceDec::nodal();           // Srf
  std::optional<DualGraph> graph;                 // Graph
  std::string box_inst;                           // Box: owning instance
  std::shared_ptr<const Tree> box_tree;           // Box: underlying element
  std::string box_code;                           // Box: its canonical code

  static Dec unit(int n);
  static Dec sym(std::string name, int n);
  static Dec modulus(const Modulus& m);
  static Dec surface(const SurfaceDec& s);
  static Dec dual_graph(DualGraph g);
  static Dec box(std::string inst, std::shared_ptr<const Tree> tree,
                 std::string code, int n);

  // Serialized decoration tokens, e.g. "fr g=1 m=2", "nod 1/2", "sym a n=2".
  // Boxes render as a parenthesized block "(box inst elem)".
  std::string str() const;

  bool operator==(const Dec& o) const;
};

}  // namespace oforge
