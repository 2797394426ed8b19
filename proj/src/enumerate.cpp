#include "oforge/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace oforge {

int dec_genus(const Dec& d) {
  switch (d.kind) {
    case Dec::Kind::Srf:
      return d.srf.kind() == SurfaceDec::Kind::Smooth ? d.srf.genus() : 0;
    case Dec::Kind::Graph: return d.graph->total_genus();
    case Dec::Kind::Box: return d.box_tree ? tree_genus(*d.box_tree) : 0;
    default: return 0;
  }
}

namespace {

int node_genus(const TreeNode& nd) {
  if (nd.is_slot) return 0;
  int g = dec_genus(nd.dec);
  for (const auto& k : nd.kids) g += node_genus(k);
  return g;
}

int node_vertices(const TreeNode& nd) {
  if (nd.is_slot) return 0;
  int v = 1;
  for (const auto& k : nd.kids) v += node_vertices(k);
  return v;
}

}  // namespace

int tree_genus(const Tree& t) { return t.is_trivial() ? 0 : node_genus(t.root()); }

// ---------------------------------------------------------------------------
// Planar tree generation, budget-exact so each tree appears once: a child
// tuple determines its own slot/vertex/genus consumption, making the
// recursion path unique per result.
// ---------------------------------------------------------------------------

namespace {

struct TreeGen {
  std::vector<std::vector<Dec>> dom;  // by vertex arity

  using NodeSink = std::function<void(TreeNode&&)>;

  // Subtrees occupying `slots` planar slots within the vertex and genus
  // budgets, streamed to the sink. A bare slot is a valid subtree exactly
  // when slots == 1.
  void sub(int slots, int v, int g, const NodeSink& sink) const {
    if (slots == 1) {
      TreeNode s;
      s.is_slot = true;
      sink(std::move(s));
    }
    if (v < 1) return;
    for (int k = 0; k < static_cast<int>(dom.size()); ++k) {
      if (dom[static_cast<size_t>(k)].empty()) continue;
      for (const Dec& d : dom[static_cast<size_t>(k)]) {
        int dg = dec_genus(d);
        if (dg > g) continue;
        std::vector<TreeNode> cur;
        kids_rec(k, slots, v - 1, g - dg, cur, [&](const std::vector<TreeNode>& kids) {
          TreeNode nd;
          nd.dec = d;
          nd.kids = kids;
          sink(std::move(nd));
        });
      }
    }
  }

  void kids_rec(int remaining, int slots_left, int v, int g, std::vector<TreeNode>& cur,
                const std::function<void(const std::vector<TreeNode>&)>& sink) const {
    if (remaining == 0) {
      if (slots_left == 0) sink(cur);
      return;
    }
    for (int s = 0; s <= slots_left; ++s) {
      sub(s, v, g, [&](TreeNode&& child) {
        int cv = node_vertices(child);
        int cg = node_genus(child);
        cur.push_back(std::move(child));
        kids_rec(remaining - 1, slots_left - s, v - cv, g - cg, cur, sink);
        cur.pop_back();
      });
    }
  }
};

void assign_planar_labels(TreeNode& nd, int& next) {
  if (nd.is_slot) {
    nd.label = next++;
    return;
  }
  for (auto& k : nd.kids) assign_planar_labels(k, next);
}

}  // namespace

void for_each_planar_tree(int arity, int max_vertices, int max_genus,
                          const DomainFn& domain, int max_vertex_arity,
                          const std::function<void(Tree&&)>& sink) {
  TreeGen gen;
  for (int k = 0; k <= max_vertex_arity; ++k) gen.dom.push_back(domain(k));
  gen.sub(arity, max_vertices, max_genus, [&](TreeNode&& root) {
    if (root.is_slot) return;  // the trivial tree is the caller's business
    int next = 1;
    assign_planar_labels(root, next);
    sink(Tree::of(std::move(root)));
  });
}

std::vector<Tree> enumerate_planar_trees(int arity, int max_vertices, int max_genus,
                                         const DomainFn& domain, int max_vertex_arity) {
  std::vector<Tree> out;
  for_each_planar_tree(arity, max_vertices, max_genus, domain, max_vertex_arity,
                       [&](Tree&& t) { out.push_back(std::move(t)); });
  return out;
}

void for_each_element(int arity, int max_vertices, int max_genus,
                      const DomainFn& domain, int max_vertex_arity,
                      const DecAction& dec_act, bool include_trivial,
                      const std::function<void(const Tree&)>& sink) {
  if (include_trivial && arity == 1) sink(Tree::trivial());
  auto perms = all_perms(arity);
  for_each_planar_tree(arity, max_vertices, max_genus, domain, max_vertex_arity,
                       [&](Tree&& p) {
                         for (const Perm& s : perms) {
                           // Exactly one relabeling of one planar tree is its
                           // own canonical form, so no dedup set is needed,
                           // and only that relabeling gets materialized.
                           if (act_is_canonical(p, s, dec_act)) sink(act(p, s));
                         }
                       });
}

std::vector<Tree> enumerate_elements(int arity, int max_vertices, int max_genus,
                                     const DomainFn& domain, int max_vertex_arity,
                                     const DecAction& dec_act, bool include_trivial) {
  std::vector<Tree> out;
  for_each_element(arity, max_vertices, max_genus, domain, max_vertex_arity, dec_act,
                   include_trivial, [&](const Tree& t) { out.push_back(t); });
  std::sort(out.begin(), out.end(),
            [](const Tree& a, const Tree& b) { return a.str() < b.str(); });
  return out;
}

// ---------------------------------------------------------------------------
// Length-weighted enumeration: every non-root internal vertex receives each
// grid length in turn.
// ---------------------------------------------------------------------------

namespace {

void collect_len_sites(TreeNode& nd, bool is_root, std::vector<TreeNode*>& sites) {
  if (nd.is_slot) return;
  if (!is_root) sites.push_back(&nd);
  for (auto& k : nd.kids) collect_len_sites(k, false, sites);
}

}  // namespace

void for_each_w_element(int arity, int max_vertices, int max_genus,
                        const DomainFn& domain, int max_vertex_arity,
                        const std::vector<Rational>& lengths,
                        const DecAction& dec_act, bool include_trivial,
                        const std::function<void(const Tree&)>& sink) {
  if (include_trivial && arity == 1) sink(Tree::trivial());
  auto perms = all_perms(arity);
  for_each_planar_tree(
      arity, max_vertices, max_genus, domain, max_vertex_arity, [&](Tree&& p) {
        TreeNode root = p.root();
        std::vector<TreeNode*> sites;
        collect_len_sites(root, true, sites);
        std::vector<size_t> pick(sites.size(), 0);
        for (;;) {
          for (size_t s = 0; s < sites.size(); ++s) sites[s]->len = lengths[pick[s]];
          Tree withlen = Tree::of(root);
          for (const Perm& s : perms)
            if (act_is_canonical(withlen, s, dec_act)) sink(act(withlen, s));
          size_t j = 0;
          while (j < sites.size() && ++pick[j] == lengths.size()) pick[j++] = 0;
          if (j == sites.size()) break;
        }
      });
}

std::vector<Tree> enumerate_w_elements(int arity, int max_vertices, int max_genus,
                                       const DomainFn& domain, int max_vertex_arity,
                                       const std::vector<Rational>& lengths,
                                       const DecAction& dec_act, bool include_trivial) {
  std::vector<Tree> out;
  for_each_w_element(arity, max_vertices, max_genus, domain, max_vertex_arity, lengths,
                     dec_act, include_trivial,
                     [&](const Tree& t) { out.push_back(t); });
  std::sort(out.begin(), out.end(),
            [](const Tree& a, const Tree& b) { return a.str() < b.str(); });
  return out;
}

// ---------------------------------------------------------------------------
// Dual graphs
// ---------------------------------------------------------------------------

namespace {

int count_comps_in(const CompNode& c) {
  int n = 1;
  for (const auto& k : c.children) n += count_comps_in(k);
  return n;
}

int genus_in(const CompNode& c) {
  int g = c.genus;
  for (const auto& k : c.children) g += genus_in(k);
  return g;
}

struct GraphGen {
  int max_genus;

  // All component subtrees whose input labels are exactly `labels`, with at
  // most `comps` components and total genus at most `genus`.
  std::vector<CompNode> gen(const std::vector<int>& labels, int comps, int genus) const {
    std::vector<CompNode> out;
    if (comps < 1) return out;
    size_t nl = labels.size();
    for (std::uint32_t mask = 0; mask < (1u << nl); ++mask) {
      std::vector<int> own, rest;
      for (size_t i = 0; i < nl; ++i)
        ((mask >> i) & 1 ? own : rest).push_back(labels[i]);
      for (int g = 0; g <= genus; ++g) {
        std::vector<CompNode> cur;
        kids_rec(rest, comps - 1, genus - g, cur, [&](const std::vector<CompNode>& kids) {
          CompNode c;
          c.genus = g;
          c.inputs = own;
          c.children = kids;
          out.push_back(std::move(c));
        });
      }
    }
    return out;
  }

  void kids_rec(const std::vector<int>& rest, int comps, int genus,
                std::vector<CompNode>& cur,
                const std::function<void(const std::vector<CompNode>&)>& sink) const {
    if (rest.empty()) sink(cur);
    if (comps < 1) return;
    // First child takes any subset of the remaining labels (possibly empty:
    // interior branches carry no inputs); recursion covers the rest.
    size_t nl = rest.size();
    for (std::uint32_t mask = 0; mask < (1u << nl); ++mask) {
      std::vector<int> sub, keep;
      for (size_t i = 0; i < nl; ++i)
        ((mask >> i) & 1 ? sub : keep).push_back(rest[i]);
      for (const CompNode& child : gen(sub, comps, genus)) {
        int cc = count_comps_in(child);
        int cg = genus_in(child);
        cur.push_back(child);
        kids_rec(keep, comps - cc, genus - cg, cur, sink);
        cur.pop_back();
      }
    }
  }
};

bool is_disc_in(const CompNode& c) {
  return c.genus == 0 && c.inputs.size() == 1 && c.children.empty();
}

int count_discs(const CompNode& c, bool is_root) {
  int n = 0;
  if (is_root) {
    if (c.genus == 0 && c.inputs.empty() && c.children.size() == 1) ++n;
  } else if (is_disc_in(c)) {
    ++n;
  }
  for (const auto& k : c.children) n += count_discs(k, false);
  return n;
}

}  // namespace

int graph_dec_size(const DualGraph& g) {
  if (g.is_annulus_chain()) return 1;
  return g.node_count() + g.component_count() - count_discs(g.root(), true);
}

std::vector<DualGraph> enumerate_dual_graphs(const GraphEnumOpts& o) {
  std::map<std::string, DualGraph> dedup;
  if (o.include_pure_annuli && o.arity == 1) {
    for (const Rational& q : o.annulus_grid) {
      DualGraph g = DualGraph::annulus(Modulus::finite(q));
      dedup.emplace(g.str(), std::move(g));
    }
  }
  std::vector<int> labels;
  for (int i = 1; i <= o.arity; ++i) labels.push_back(i);
  GraphGen gen{o.max_total_genus};
  for (CompNode& root : gen.gen(labels, o.max_comps, o.max_total_genus)) {
    if (root.genus == 0 && root.inputs.size() == 1 && root.children.empty())
      continue;  // an annulus with no modulus is not a graph
    DualGraph g = DualGraph::of(std::move(root));
    if (!g.is_stable()) continue;
    if (o.require_decomposable && !g.decomposable()) continue;
    if (graph_dec_size(g) > o.max_dec_size) continue;
    dedup.emplace(g.str(), std::move(g));
  }
  std::vector<DualGraph> out;
  out.reserve(dedup.size());
  for (auto& [code, g] : dedup) out.push_back(std::move(g));
  return out;
}

std::vector<MarkedSkeleton> enumerate_marked_skeletons(int arity, int max_total_genus,
                                                       int max_comps) {
  std::map<std::string, MarkedSkeleton> dedup;
  std::vector<int> labels;
  for (int i = 1; i <= arity; ++i) labels.push_back(i);
  GraphGen gen{max_total_genus};
  for (CompNode& root : gen.gen(labels, max_comps, max_total_genus)) {
    MarkedSkeleton s = MarkedSkeleton::of(std::move(root));
    if (!s.is_stable()) continue;
    dedup.emplace(s.str(), std::move(s));
  }
  std::vector<MarkedSkeleton> out;
  out.reserve(dedup.size());
  for (auto& [code, s] : dedup) out.push_back(std::move(s));
  return out;
}

}  // namespace oforge
