#include "oforge/wspace.hpp"

#include <cassert>
#include <iterator>
#include <memory>
#include <stdexcept>

#include "oforge/instances.hpp"

namespace oforge {

Dec w_dec_of(const OperadInstance& base, const Tree& elem) {
  if (base.corolla_decs) {
    assert(!elem.is_trivial() && elem.vertex_count() == 1);
    return elem.root().dec;
  }
  std::string code = elem.str();
  int n = elem.arity();
  return Dec::box(base.name, std::make_shared<const Tree>(elem), std::move(code), n);
}

Tree w_elem_of(const OperadInstance& base, const Dec& d) {
  if (d.kind == Dec::Kind::Box) {
    assert(d.box_tree);
    return *d.box_tree;
  }
  assert(base.corolla_decs);
  (void)base;
  return Tree::corolla(d);
}

Tree w_compose(const OperadInstance& base, const Tree& u,
               const std::vector<Tree>& parts) {
  return canonical_tree(graft(u, parts, Rational(1)), w_dec_action(base));
}

namespace {

bool is_zero_edge(const TreeNode& kid) {
  return !kid.is_slot && kid.len && *kid.len == Rational(0);
}

int zero_edges_below(const TreeNode& nd) {
  int c = 0;
  for (const TreeNode& k : nd.kids) {
    if (k.is_slot) continue;
    if (is_zero_edge(k)) ++c;
    c += zero_edges_below(k);
  }
  return c;
}

// Splice the j-th child into nd, replacing nd's decoration by the composite
// at input j+1. Partial composition orders the composite's inputs exactly as
// the spliced child list, so the planar-position convention survives.
void merge_child(const OperadInstance& base, TreeNode& nd, size_t j) {
  TreeNode kid = std::move(nd.kids[j]);
  Tree composite = base.pcomp(w_elem_of(base, nd.dec), static_cast<int>(j) + 1,
                              w_elem_of(base, kid.dec));
  nd.dec = w_dec_of(base, composite);
  nd.kids.erase(nd.kids.begin() + static_cast<std::ptrdiff_t>(j));
  nd.kids.insert(nd.kids.begin() + static_cast<std::ptrdiff_t>(j),
                 std::make_move_iterator(kid.kids.begin()),
                 std::make_move_iterator(kid.kids.end()));
}

bool contract_rec(const OperadInstance& base, TreeNode& nd, int& k) {
  for (size_t j = 0; j < nd.kids.size(); ++j) {
    TreeNode& kid = nd.kids[j];
    if (kid.is_slot) continue;
    if (is_zero_edge(kid)) {
      if (k == 0) {
        merge_child(base, nd, j);
        return true;
      }
      --k;
    }
    if (contract_rec(base, kid, k)) return true;
  }
  return false;
}

}  // namespace

int w_zero_edge_count(const Tree& t) {
  return t.is_trivial() ? 0 : zero_edges_below(t.root());
}

Tree w_contract_once(const OperadInstance& base, const Tree& t, int k) {
  if (t.is_trivial()) throw std::logic_error("w_contract_once: no edges");
  TreeNode root = t.root();
  if (!contract_rec(base, root, k))
    throw std::logic_error("w_contract_once: zero-edge index out of range");
  return Tree::of(std::move(root));
}

Tree w_contract(const OperadInstance& base, const Tree& t) {
  Tree cur = t;
  while (w_zero_edge_count(cur) > 0) cur = w_contract_once(base, cur, 0);
  return canonical_tree(cur, w_dec_action(base));
}

Tree w_counit(const OperadInstance& base, const Tree& t) {
  if (t.is_trivial()) return base.unit;
  return eval_tree(t, base,
                   [&](const TreeNode& nd) { return w_elem_of(base, nd.dec); });
}

// ---------------------------------------------------------------------------
// Seam removal by cluster counting.
// ---------------------------------------------------------------------------

namespace {

struct Cluster {
  int genus = 0;
  bool all_annuli = true;
  Rational mod_sum = Rational(0);
  std::vector<TreeNode> ext;
};

TreeNode hd_node(const TreeNode& nd);

void absorb(const TreeNode& nd, Cluster& c) {
  assert(nd.dec.kind == Dec::Kind::Srf);
  const SurfaceDec& s = nd.dec.srf;
  assert(s.kind() != SurfaceDec::Kind::Nodal);
  if (s.kind() == SurfaceDec::Kind::Annulus) {
    c.mod_sum += s.modulus();
  } else {
    c.all_annuli = false;
    c.genus += s.genus();
  }
  for (const TreeNode& k : nd.kids) {
    if (is_zero_edge(k))
      absorb(k, c);
    else
      c.ext.push_back(hd_node(k));
  }
}

TreeNode hd_node(const TreeNode& nd) {
  if (nd.is_slot) return nd;
  Cluster c;
  absorb(nd, c);
  TreeNode out;
  out.len = nd.len;
  if (c.all_annuli) {
    assert(c.ext.size() == 1);
    out.dec = Dec::surface(SurfaceDec::annulus(c.mod_sum));
  } else {
    out.dec = Dec::surface(
        SurfaceDec::smooth(c.genus, static_cast<int>(c.ext.size())));
  }
  out.kids = std::move(c.ext);
  return out;
}

}  // namespace

Tree hd_normalize(const Tree& t) {
  if (t.is_trivial()) return t;
  return canonical_tree(Tree::of(hd_node(t.root())), trivial_dec_action);
}

// ---------------------------------------------------------------------------
// Protection: nodes only inside two-disc pieces.
// ---------------------------------------------------------------------------

namespace {

bool dec_has_nodes(const Dec& d) {
  switch (d.kind) {
    case Dec::Kind::Graph: return d.graph->node_count() > 0;
    case Dec::Kind::Mod: return d.mod.is_infinite();
    case Dec::Kind::Srf: return d.srf.kind() == SurfaceDec::Kind::Nodal;
    default: return false;
  }
}

bool dec_is_nodal_annulus(const Dec& d) {
  switch (d.kind) {
    case Dec::Kind::Graph:
      return *d.graph == graph_of_modulus(Modulus::infinite());
    case Dec::Kind::Mod: return d.mod.is_infinite();
    case Dec::Kind::Srf: return d.srf.kind() == SurfaceDec::Kind::Nodal;
    default: return false;
  }
}

bool protected_rec(const TreeNode& nd) {
  if (nd.is_slot) return true;
  if (nd.dec.kind == Dec::Kind::Box) {
    if (nd.dec.box_tree && !w_is_protected(*nd.dec.box_tree)) return false;
  } else if (dec_has_nodes(nd.dec) && !dec_is_nodal_annulus(nd.dec)) {
    return false;
  }
  for (const TreeNode& k : nd.kids)
    if (!protected_rec(k)) return false;
  return true;
}

}  // namespace

bool w_is_protected(const Tree& t) {
  return t.is_trivial() || protected_rec(t.root());
}

}  // namespace oforge
