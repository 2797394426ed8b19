#include "oforge/pushout.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "oforge/instances.hpp"

namespace oforge {

std::string RewriteRule::str() const {
  std::string s;
  switch (kind) {
    case Kind::Contract: s = "contract"; break;
    case Kind::Flip: s = "flip"; break;
    case Kind::Shift: s = "shift"; break;
  }
  s += " v" + std::to_string(vertex);
  if (child >= 0) s += " c" + std::to_string(child);
  return s;
}

namespace {

// ---------------------------------------------------------------------------
// Vertex tables over a working copy of the tree
// ---------------------------------------------------------------------------

struct VRef {
  TreeNode* nd;
  int parent;  // index into the table, -1 at the root
  int pos;     // planar position within the parent
  int depth;
};

void collect_refs(TreeNode& nd, int parent, int pos, int depth,
                  std::vector<VRef>& out) {
  if (nd.is_slot) return;
  int me = static_cast<int>(out.size());
  out.push_back({&nd, parent, pos, depth});
  for (std::size_t j = 0; j < nd.kids.size(); ++j)
    collect_refs(nd.kids[j], me, static_cast<int>(j), depth + 1, out);
}

// Paths of planar kid indices from the root, preorder over internal vertices.
void collect_paths(const TreeNode& nd, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (nd.is_slot) return;
  out.push_back(cur);
  for (std::size_t j = 0; j < nd.kids.size(); ++j) {
    cur.push_back(static_cast<int>(j));
    collect_paths(nd.kids[j], cur, out);
    cur.pop_back();
  }
}

TreeNode* navigate(TreeNode& root, const std::vector<int>& path) {
  TreeNode* nd = &root;
  for (int j : path) nd = &nd->kids[static_cast<std::size_t>(j)];
  return nd;
}

bool srf_is_ann(const Dec& d) {
  return d.kind == Dec::Kind::Srf && d.srf.kind() == SurfaceDec::Kind::Annulus;
}

bool mod_finite(const Dec& d) {
  return d.kind == Dec::Kind::Mod && !d.mod.is_infinite();
}

// Annular piece in either guise.
bool piece_annular(const Dec& d) { return mod_finite(d) || srf_is_ann(d); }

}  // namespace

// ---------------------------------------------------------------------------
// Rule enumeration and application
// ---------------------------------------------------------------------------

std::vector<RewriteRule> applicable_rules(const PushoutSystem& sys, const Tree& t) {
  std::vector<RewriteRule> out;
  if (t.is_trivial()) return out;
  TreeNode root = t.root();
  std::vector<VRef> vs;
  collect_refs(root, -1, -1, 0, vs);

  std::vector<int> sides(vs.size());
  std::vector<char> pnodal(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    sides[i] = sys.side(vs[i].nd->dec);
    pnodal[i] = sys.properly_nodal(vs[i].nd->dec) ? 1 : 0;
  }

  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!sys.a_image(vs[i].nd->dec)) continue;
    bool near_nodal = vs[i].parent >= 0 && pnodal[static_cast<std::size_t>(vs[i].parent)];
    for (std::size_t j = i + 1; j < vs.size() && !near_nodal; ++j)
      if (vs[j].parent == static_cast<int>(i)) near_nodal = pnodal[j] != 0;
    // The nodal side sheds crossover decorations; the surface side absorbs
    // them only next to a node. Never both, so flips cannot oscillate.
    bool allowed = sides[i] == 0 ? !near_nodal : near_nodal;
    if (allowed)
      out.push_back({RewriteRule::Kind::Flip, static_cast<int>(i), -1, vs[i].depth});
  }

  for (std::size_t i = 1; i < vs.size(); ++i) {
    int p = vs[i].parent;
    auto pi = static_cast<std::size_t>(p);
    if (sides[i] == sides[pi]) {
      out.push_back({RewriteRule::Kind::Contract, p, vs[i].pos, vs[i].depth});
    } else if (sys.w_mode) {
      bool q_is_parent = sides[pi] == 1;
      std::size_t qi = q_is_parent ? pi : i;
      std::size_t ni = q_is_parent ? i : pi;
      if (pnodal[ni] &&
          sys.can_shift(vs[qi].nd->dec, vs[ni].nd->dec, q_is_parent, vs[i].pos + 1))
        out.push_back({RewriteRule::Kind::Shift, p, vs[i].pos, vs[i].depth});
    }
  }
  return out;
}

Tree apply_rule(const PushoutSystem& sys, const Tree& t, const RewriteRule& r) {
  assert(!t.is_trivial());
  TreeNode root = t.root();
  std::vector<VRef> vs;
  collect_refs(root, -1, -1, 0, vs);
  assert(r.vertex >= 0 && r.vertex < static_cast<int>(vs.size()));
  TreeNode& u = *vs[static_cast<std::size_t>(r.vertex)].nd;

  switch (r.kind) {
    case RewriteRule::Kind::Contract: {
      auto j = static_cast<std::size_t>(r.child);
      assert(j < u.kids.size() && !u.kids[j].is_slot);
      TreeNode kid = std::move(u.kids[j]);
      u.dec = sys.merge(u.dec, r.child + 1, kid.dec);
      u.kids.erase(u.kids.begin() + static_cast<long>(j));
      u.kids.insert(u.kids.begin() + static_cast<long>(j),
                    std::make_move_iterator(kid.kids.begin()),
                    std::make_move_iterator(kid.kids.end()));
      break;
    }
    case RewriteRule::Kind::Flip:
      u.dec = sys.flip(u.dec);
      break;
    case RewriteRule::Kind::Shift: {
      auto j = static_cast<std::size_t>(r.child);
      assert(j < u.kids.size() && !u.kids[j].is_slot);
      TreeNode& c = u.kids[j];
      bool q_is_parent = sys.side(u.dec) == 1;
      if (q_is_parent) {
        auto [q2, p2] = sys.shift(u.dec, c.dec, true, r.child + 1);
        u.dec = std::move(q2);
        c.dec = std::move(p2);
      } else {
        auto [q2, p2] = sys.shift(c.dec, u.dec, false, r.child + 1);
        c.dec = std::move(q2);
        u.dec = std::move(p2);
      }
      break;
    }
  }
  return sys.canon(Tree::of(std::move(root)));
}

// ---------------------------------------------------------------------------
// Oriented strategy
// ---------------------------------------------------------------------------

namespace {

int crossover_measure(const PushoutSystem& sys, const Tree& t) {
  if (t.is_trivial()) return 0;
  TreeNode root = t.root();
  std::vector<VRef> vs;
  collect_refs(root, -1, -1, 0, vs);
  int total = 0;
  for (const VRef& v : vs) {
    if (sys.a_measure)
      total += sys.a_measure(v.nd->dec);
    else
      total += sys.a_image(v.nd->dec) ? 1 : 0;
  }
  return total;
}

}  // namespace

NormalFormResult normal_form(const PushoutSystem& sys, const Tree& t, int step_budget) {
  Tree cur = sys.canon(t);
  const int v0 = cur.vertex_count();
  const int a0 = crossover_measure(sys, cur);
  int steps = 0;
  for (;;) {
    std::vector<RewriteRule> rules = applicable_rules(sys, cur);
    if (rules.empty()) break;
    const RewriteRule* pick = nullptr;
    for (const RewriteRule& r : rules)
      if (r.kind == RewriteRule::Kind::Contract && (!pick || r.depth > pick->depth))
        pick = &r;
    if (!pick)
      for (const RewriteRule& r : rules)
        if (r.kind == RewriteRule::Kind::Flip) {
          pick = &r;
          break;
        }
    if (!pick) pick = &rules.front();
    cur = apply_rule(sys, cur, *pick);
    if (++steps > step_budget)
      throw std::runtime_error("normal_form: step budget exceeded on " + t.str());
  }
  if (steps > v0 + a0)
    throw std::logic_error("normal_form: termination measure " +
                           std::to_string(v0 + a0) + " exceeded (" +
                           std::to_string(steps) + " steps) on " + t.str());
  return {std::move(cur), steps};
}

// ---------------------------------------------------------------------------
// Closure oracle
// ---------------------------------------------------------------------------

namespace {

std::vector<Tree> closure_neighbors(const PushoutSystem& sys, const Tree& t) {
  std::vector<Tree> out;
  if (t.is_trivial()) return out;
  {
    TreeNode root = t.root();
    std::vector<VRef> vs;
    collect_refs(root, -1, -1, 0, vs);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (sys.a_image(vs[i].nd->dec))
        out.push_back(apply_rule(
            sys, t, {RewriteRule::Kind::Flip, static_cast<int>(i), -1, 0}));
    }
    for (std::size_t i = 1; i < vs.size(); ++i) {
      int p = vs[i].parent;
      if (sys.side(vs[i].nd->dec) == sys.side(vs[static_cast<std::size_t>(p)].nd->dec))
        out.push_back(
            apply_rule(sys, t, {RewriteRule::Kind::Contract, p, vs[i].pos, 0}));
    }
  }
  if (sys.expansions)
    for (Tree& e : sys.expansions(t)) out.push_back(std::move(e));
  return out;
}

}  // namespace

Tri equal_in_pushout(const PushoutSystem& sys, const Tree& a, const Tree& b,
                     std::size_t closure_budget) {
  Tree ca = sys.canon(a);
  Tree cb = sys.canon(b);
  if (ca == cb) return Tri::True;
  if (sys.invariant(ca).str() != sys.invariant(cb).str()) return Tri::False;

  NormalFormResult na = normal_form(sys, ca);
  NormalFormResult nb = normal_form(sys, cb);
  if (na.tree == nb.tree) return Tri::True;

  // Expansion moves can split decorations forever (a zero modulus splits into
  // two zero moduli), so the closure is only finite within a vertex cap. A
  // "different" verdict is therefore relative to the explored grid and cap.
  int vertex_cap =
      std::max(std::max(ca.vertex_count(), cb.vertex_count()),
               std::max(na.tree.vertex_count(), nb.tree.vertex_count())) +
      2;

  std::set<std::string> vis[2];
  std::deque<Tree> frontier[2];
  auto seed = [&](int s, const Tree& x) {
    if (vis[s].insert(x.str()).second) frontier[s].push_back(x);
  };
  seed(0, ca);
  seed(0, na.tree);
  seed(1, cb);
  seed(1, nb.tree);
  if (vis[0].count(nb.tree.str()) || vis[1].count(na.tree.str())) return Tri::True;

  while (!frontier[0].empty() || !frontier[1].empty()) {
    int s;
    if (frontier[0].empty())
      s = 1;
    else if (frontier[1].empty())
      s = 0;
    else
      s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    Tree cur = std::move(frontier[s].front());
    frontier[s].pop_front();
    for (const Tree& nb2 : closure_neighbors(sys, cur)) {
      if (nb2.vertex_count() > vertex_cap) continue;
      std::string code = nb2.str();
      if (vis[1 - s].count(code)) return Tri::True;
      if (!vis[s].insert(code).second) continue;
      if (vis[0].size() + vis[1].size() > closure_budget) return Tri::Undecided;
      frontier[s].push_back(nb2);
    }
  }
  return Tri::False;
}

std::vector<std::string> confluence_sample(const PushoutSystem& sys, const Tree& t,
                                           int trials, std::uint64_t seed,
                                           int step_budget) {
  std::set<std::string> finals;
  std::mt19937_64 rng(seed);
  Tree start = sys.canon(t);
  for (int i = 0; i < trials; ++i) {
    Tree cur = start;
    int steps = 0;
    for (;;) {
      std::vector<RewriteRule> rules = applicable_rules(sys, cur);
      if (rules.empty()) {
        finals.insert(cur.str());
        break;
      }
      if (steps++ >= step_budget) {
        finals.insert("!budget " + cur.str());
        break;
      }
      cur = apply_rule(sys, cur, rules[rng() % rules.size()]);
    }
  }
  return {finals.begin(), finals.end()};
}

// ---------------------------------------------------------------------------
// The surface amalgam
// ---------------------------------------------------------------------------

namespace {

// Parent/child decoration pairs composing to d with the child taking `len`
// planar kids; candidates drawn from the grid.
std::vector<std::pair<Dec, Dec>> split_pairs(const Dec& d, int len,
                                             const std::vector<Rational>& grid) {
  std::vector<std::pair<Dec, Dec>> out;
  if (d.kind == Dec::Kind::Mod) {
    if (len != 1) return out;
    if (d.mod.is_infinite()) {
      out.emplace_back(Dec::modulus(Modulus::infinite()), Dec::modulus(Modulus::infinite()));
      for (const Rational& x : grid) {
        out.emplace_back(Dec::modulus(Modulus::infinite()), Dec::modulus(Modulus::finite(x)));
        out.emplace_back(Dec::modulus(Modulus::finite(x)), Dec::modulus(Modulus::infinite()));
      }
    } else {
      for (const Rational& x : grid)
        for (const Rational& y : grid)
          if (x + y == d.mod.value())
            out.emplace_back(Dec::modulus(Modulus::finite(x)),
                             Dec::modulus(Modulus::finite(y)));
    }
    return out;
  }
  if (d.kind != Dec::Kind::Srf) return out;
  if (d.srf.kind() == SurfaceDec::Kind::Annulus) {
    if (len != 1) return out;
    for (const Rational& x : grid)
      for (const Rational& y : grid)
        if (x + y == d.srf.modulus())
          out.emplace_back(Dec::surface(SurfaceDec::annulus(x)),
                           Dec::surface(SurfaceDec::annulus(y)));
    return out;
  }
  if (d.srf.kind() != SurfaceDec::Kind::Smooth) return out;
  int g = d.srf.genus();
  int m = d.srf.inputs();
  if (len == m)
    for (const Rational& x : grid)
      out.emplace_back(Dec::surface(SurfaceDec::annulus(x)), d);
  if (len == 1)
    for (const Rational& x : grid)
      out.emplace_back(d, Dec::surface(SurfaceDec::annulus(x)));
  int m1 = m - len + 1;
  for (int g1 = 0; g1 <= g; ++g1) {
    int g2 = g - g1;
    if (g1 == 0 && m1 == 1) continue;  // one-input genus-0 pieces are annuli
    if (g2 == 0 && len == 1) continue;
    out.emplace_back(Dec::surface(SurfaceDec::smooth(g1, m1)),
                     Dec::surface(SurfaceDec::smooth(g2, len)));
  }
  return out;
}

std::vector<Tree> surface_expansions(
    const Tree& t, const std::vector<Rational>& grid,
    const std::function<Dec(const Dec&, int, const Dec&)>& merge,
    const DecAction& act) {
  std::vector<Tree> out;
  if (t.is_trivial()) return out;
  std::vector<std::vector<int>> paths;
  {
    std::vector<int> cur;
    collect_paths(t.root(), cur, paths);
  }
  for (const std::vector<int>& path : paths) {
    TreeNode probe = t.root();
    const Dec d = navigate(probe, path)->dec;
    int k = d.n;
    for (int len = 1; len <= k; ++len)
      for (int s0 = 0; s0 + len <= k; ++s0)
        for (const auto& [d1, d2] : split_pairs(d, len, grid)) {
          if (!(merge(d1, s0 + 1, d2) == d)) continue;
          TreeNode root = t.root();
          TreeNode* v = navigate(root, path);
          TreeNode child;
          child.dec = d2;
          auto first = v->kids.begin() + s0;
          child.kids.assign(std::make_move_iterator(first),
                            std::make_move_iterator(first + len));
          v->kids.erase(first, first + len);
          v->kids.insert(v->kids.begin() + s0, std::move(child));
          v->dec = d1;
          out.push_back(canonical_tree(Tree::of(std::move(root)), act));
        }
  }
  return out;
}

Tree mu_surface(const Tree& t) {
  static const OperadInstance nod = nodfr_disc();
  return eval_tree(t, nod, [](const TreeNode& nd) {
    if (nd.dec.kind == Dec::Kind::Mod)
      return Tree::corolla(Dec::dual_graph(graph_of_modulus(nd.dec.mod)));
    if (nd.dec.kind == Dec::Kind::Srf)
      return Tree::corolla(Dec::dual_graph(graph_of_surface(nd.dec.srf)));
    throw std::invalid_argument("surface amalgam: bad vertex " + nd.dec.str());
  });
}

}  // namespace

PushoutSystem surface_pushout(const Bounds& b) {
  PushoutSystem s;
  s.name = "surface";
  s.w_mode = false;
  s.act = trivial_dec_action;
  s.side = [](const Dec& d) {
    if (d.kind == Dec::Kind::Mod) return 0;
    if (d.kind == Dec::Kind::Srf) return 1;
    throw std::invalid_argument("surface amalgam: bad vertex " + d.str());
  };
  s.a_image = [](const Dec& d) { return piece_annular(d); };
  s.flip = [](const Dec& d) {
    if (d.kind == Dec::Kind::Mod) {
      assert(!d.mod.is_infinite());
      return Dec::surface(SurfaceDec::annulus(d.mod.value()));
    }
    assert(srf_is_ann(d));
    return Dec::modulus(Modulus::finite(d.srf.modulus()));
  };
  s.properly_nodal = [](const Dec& d) {
    return d.kind == Dec::Kind::Mod && d.mod.is_infinite();
  };
  s.merge = [](const Dec& u, int pos, const Dec& c) {
    std::vector<std::optional<Dec>> parts(static_cast<std::size_t>(u.n));
    parts[static_cast<std::size_t>(pos) - 1] = c;
    return compose_decs(u, parts);
  };
  s.invariant = mu_surface;
  s.expansions = [grid = b.modulus_grid, merge = s.merge, act = s.act](const Tree& t) {
    return surface_expansions(t, grid, merge, act);
  };
  return s;
}

// ---------------------------------------------------------------------------
// The weighted surface amalgam
// ---------------------------------------------------------------------------

namespace {

Dec make_box(const OperadInstance& W, const Tree& elem) {
  Tree c = W.canon(elem);
  std::string code = c.str();
  int n = c.arity();
  return Dec::box(W.name, std::make_shared<const Tree>(std::move(c)),
                  std::move(code), n);
}

bool node_all_annular(const TreeNode& nd) {
  if (nd.is_slot) return true;
  if (!piece_annular(nd.dec)) return false;
  for (const TreeNode& k : nd.kids)
    if (!node_all_annular(k)) return false;
  return true;
}

bool node_any_infinite(const TreeNode& nd) {
  if (nd.is_slot) return false;
  if (nd.dec.kind == Dec::Kind::Mod && nd.dec.mod.is_infinite()) return true;
  for (const TreeNode& k : nd.kids)
    if (node_any_infinite(k)) return true;
  return false;
}

int node_annular_pieces(const TreeNode& nd) {
  if (nd.is_slot) return 0;
  int c = piece_annular(nd.dec) ? 1 : 0;
  for (const TreeNode& k : nd.kids) c += node_annular_pieces(k);
  return c;
}

TreeNode flip_pieces(const TreeNode& nd) {
  if (nd.is_slot) return nd;
  TreeNode out;
  out.len = nd.len;
  if (nd.dec.kind == Dec::Kind::Mod) {
    assert(!nd.dec.mod.is_infinite());
    out.dec = Dec::surface(SurfaceDec::annulus(nd.dec.mod.value()));
  } else {
    assert(srf_is_ann(nd.dec));
    out.dec = Dec::modulus(Modulus::finite(nd.dec.srf.modulus()));
  }
  for (const TreeNode& k : nd.kids) out.kids.push_back(flip_pieces(k));
  return out;
}

// The inner vertex owning the slot with this label as a direct child.
const TreeNode* slot_owner(const TreeNode& nd, int label, const TreeNode* parent,
                           const TreeNode** owner_parent) {
  if (nd.is_slot) return nullptr;
  for (const TreeNode& k : nd.kids)
    if (k.is_slot && k.label == label) {
      *owner_parent = parent;
      return &nd;
    }
  for (const TreeNode& k : nd.kids)
    if (const TreeNode* r = slot_owner(k, label, &nd, owner_parent)) return r;
  return nullptr;
}

bool remove_slot_owner(TreeNode& nd, int label) {
  for (std::size_t j = 0; j < nd.kids.size(); ++j) {
    TreeNode& k = nd.kids[j];
    if (k.is_slot) continue;
    bool owns = k.kids.size() == 1 && k.kids[0].is_slot && k.kids[0].label == label;
    if (owns) {
      TreeNode slot = k.kids[0];
      nd.kids[j] = std::move(slot);
      return true;
    }
    if (remove_slot_owner(k, label)) return true;
  }
  return false;
}

void collect_slot_labels_of(const TreeNode& nd, std::vector<int>& out) {
  if (nd.is_slot) {
    out.push_back(nd.label);
    return;
  }
  for (const TreeNode& k : nd.kids) collect_slot_labels_of(k, out);
}

void relabel_slots_by(TreeNode& nd, const std::map<int, int>& m) {
  if (nd.is_slot) {
    nd.label = m.at(nd.label);
    return;
  }
  for (TreeNode& k : nd.kids) relabel_slots_by(k, m);
}

// Every unit-length inner edge of every box splits the box in two; the outer
// tree reroutes the children accordingly. These are the class-preserving
// expansions of the weighted system.
std::vector<Tree> w_cut_expansions(const Tree& t, const OperadInstance& Wp,
                                   const OperadInstance& Wq, const DecAction& act) {
  std::vector<Tree> out;
  if (t.is_trivial()) return out;
  std::vector<std::vector<int>> opaths;
  {
    std::vector<int> cur;
    collect_paths(t.root(), cur, opaths);
  }
  for (const std::vector<int>& opath : opaths) {
    TreeNode oprobe = t.root();
    const Dec box = navigate(oprobe, opath)->dec;
    if (box.kind != Dec::Kind::Box) continue;
    const OperadInstance& W = box.box_inst == Wp.name ? Wp : Wq;
    const Tree& e = *box.box_tree;
    if (e.is_trivial()) continue;
    std::vector<std::vector<int>> ipaths;
    {
      std::vector<int> cur;
      collect_paths(e.root(), cur, ipaths);
    }
    for (const std::vector<int>& ipath : ipaths) {
      if (ipath.empty()) continue;  // the box root has no upward edge
      TreeNode iroot = e.root();
      TreeNode* x = navigate(iroot, ipath);
      if (!x->len || !(*x->len == Rational(1))) continue;

      std::vector<int> lower;
      collect_slot_labels_of(*x, lower);
      std::sort(lower.begin(), lower.end());
      assert(!lower.empty());

      // Lower element: the subtree, slots renumbered in order.
      TreeNode low = *x;
      low.len.reset();
      {
        std::map<int, int> m;
        for (std::size_t i = 0; i < lower.size(); ++i)
          m[lower[i]] = static_cast<int>(i) + 1;
        relabel_slots_by(low, m);
      }
      Dec low_box = make_box(W, Tree::of(std::move(low)));

      // Upper element: the subtree replaced by one slot keyed where the
      // lower block begins.
      TreeNode slot;
      slot.is_slot = true;
      slot.label = lower.front();
      *x = std::move(slot);
      std::vector<int> upper;
      collect_slot_labels_of(iroot, upper);
      std::sort(upper.begin(), upper.end());
      int cut_rank = 0;
      {
        std::map<int, int> m;
        for (std::size_t i = 0; i < upper.size(); ++i) {
          m[upper[i]] = static_cast<int>(i) + 1;
          if (upper[i] == lower.front()) cut_rank = static_cast<int>(i);
        }
        relabel_slots_by(iroot, m);
      }
      Dec up_box = make_box(W, Tree::of(std::move(iroot)));

      // Outer surgery: the vertex keeps the upper box; a new child under it
      // takes the lower box and the kids the lower slots routed to.
      TreeNode root = t.root();
      TreeNode* v = navigate(root, opath);
      std::vector<TreeNode> old = std::move(v->kids);
      v->kids.clear();
      v->dec = up_box;
      for (std::size_t idx = 0; idx < upper.size(); ++idx) {
        if (static_cast<int>(idx) == cut_rank) {
          TreeNode c2;
          c2.dec = low_box;
          for (int lab : lower)
            c2.kids.push_back(std::move(old[static_cast<std::size_t>(lab) - 1]));
          v->kids.push_back(std::move(c2));
        } else {
          int lab = upper[idx];
          v->kids.push_back(std::move(old[static_cast<std::size_t>(lab) - 1]));
        }
      }
      out.push_back(canonical_tree(Tree::of(std::move(root)), act));
    }
  }
  return out;
}

Tree mu_w(const Tree& t) {
  static const OperadInstance wnod = w_of(nodfr_disc());
  return eval_tree(t, wnod, [](const TreeNode& nd) {
    assert(nd.dec.kind == Dec::Kind::Box);
    const Tree& e = *nd.dec.box_tree;
    assert(!e.is_trivial());
    std::function<TreeNode(const TreeNode&)> conv = [&](const TreeNode& x) {
      if (x.is_slot) return x;
      TreeNode y;
      y.len = x.len;
      if (x.dec.kind == Dec::Kind::Mod)
        y.dec = Dec::dual_graph(graph_of_modulus(x.dec.mod));
      else if (x.dec.kind == Dec::Kind::Srf)
        y.dec = Dec::dual_graph(graph_of_surface(x.dec.srf));
      else
        throw std::invalid_argument("weighted amalgam: bad piece " + x.dec.str());
      for (const TreeNode& k : x.kids) y.kids.push_back(conv(k));
      return y;
    };
    return wnod.canon(Tree::of(conv(e.root())));
  });
}

}  // namespace

PushoutSystem w_surface_pushout() {
  auto Wp = std::make_shared<const OperadInstance>(w_of(nodann_disc()));
  auto Wq = std::make_shared<const OperadInstance>(w_of(fr_disc()));

  PushoutSystem s;
  s.name = "w-surface";
  s.w_mode = true;
  s.act = [Wp, Wq](const Dec& d, const Perm& sigma) -> Dec {
    if (d.kind != Dec::Kind::Box)
      throw std::invalid_argument("weighted amalgam: bad vertex " + d.str());
    const OperadInstance& W = d.box_inst == Wp->name ? *Wp : *Wq;
    return make_box(W, W.act_on(*d.box_tree, sigma));
  };
  s.side = [Wp, Wq](const Dec& d) {
    if (d.kind == Dec::Kind::Box) {
      if (d.box_inst == Wp->name) return 0;
      if (d.box_inst == Wq->name) return 1;
    }
    throw std::invalid_argument("weighted amalgam: bad vertex " + d.str());
  };
  s.a_image = [](const Dec& d) {
    assert(d.kind == Dec::Kind::Box);
    return node_all_annular(d.box_tree->root());
  };
  s.flip = [Wp, Wq](const Dec& d) {
    const OperadInstance& other = d.box_inst == Wp->name ? *Wq : *Wp;
    return make_box(other, Tree::of(flip_pieces(d.box_tree->root())));
  };
  s.properly_nodal = [](const Dec& d) {
    assert(d.kind == Dec::Kind::Box);
    return node_any_infinite(d.box_tree->root());
  };
  s.merge = [Wp, Wq](const Dec& u, int pos, const Dec& c) {
    assert(u.box_inst == c.box_inst);
    const OperadInstance& W = u.box_inst == Wp->name ? *Wp : *Wq;
    return make_box(W, W.pcomp(*u.box_tree, pos, *c.box_tree));
  };
  s.can_shift = [](const Dec& q, const Dec& p, bool from_parent, int slot) {
    (void)p;
    const TreeNode& root = q.box_tree->root();
    if (!from_parent) {
      // The junction-facing piece is the root of the child box.
      if (!srf_is_ann(root.dec)) return false;
      assert(root.kids.size() == 1);
      const TreeNode& k = root.kids[0];
      return !k.is_slot && k.len && *k.len == Rational(1);
    }
    // The junction-facing piece of the parent box owns the given slot.
    const TreeNode* owner_parent = nullptr;
    const TreeNode* owner = slot_owner(root, slot, nullptr, &owner_parent);
    assert(owner);
    if (!srf_is_ann(owner->dec)) return false;
    if (!owner_parent) return false;  // root piece: whole box is annular
    return owner->len && *owner->len == Rational(1);
  };
  s.shift = [Wp, Wq](const Dec& q, const Dec& p, bool from_parent, int slot) {
    const Tree& qe = *q.box_tree;
    const Tree& pe = *p.box_tree;
    Rational m(0);
    Tree q_rest = Tree::trivial();
    if (!from_parent) {
      TreeNode root = qe.root();
      m = root.dec.srf.modulus();
      TreeNode rest = std::move(root.kids[0]);
      rest.len.reset();
      q_rest = Tree::of(std::move(rest));
    } else {
      TreeNode root = qe.root();
      const TreeNode* owner_parent = nullptr;
      const TreeNode* owner = slot_owner(root, slot, nullptr, &owner_parent);
      assert(owner && owner_parent);
      m = owner->dec.srf.modulus();
      bool removed = remove_slot_owner(root, slot);
      assert(removed);
      (void)removed;
      q_rest = Tree::of(std::move(root));
    }
    Tree piece = Tree::corolla(Dec::modulus(Modulus::finite(m)));
    Tree p_new = from_parent ? Wp->compose(piece, {pe}) : Wp->pcomp(pe, slot, piece);
    return std::make_pair(make_box(*Wq, q_rest), make_box(*Wp, p_new));
  };
  s.a_measure = [](const Dec& d) {
    assert(d.kind == Dec::Kind::Box);
    int pieces = node_annular_pieces(d.box_tree->root());
    return pieces + (node_all_annular(d.box_tree->root()) ? 1 : 0);
  };
  s.invariant = mu_w;
  s.expansions = [Wp, Wq, act = s.act](const Tree& t) {
    return w_cut_expansions(t, *Wp, *Wq, act);
  };
  return s;
}

}  // namespace oforge
