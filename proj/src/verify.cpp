#include "oforge/verify.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "oforge/enumerate.hpp"
#include "oforge/instances.hpp"
#include "oforge/threads.hpp"
#include "oforge/wspace.hpp"

namespace oforge {

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Per-(arity, genus) counts accumulated by the checks; flattened into the
// report in sorted order so the output is deterministic.
using CellMap = std::map<std::pair<int, int>, std::pair<std::uint64_t, std::uint64_t>>;

void flatten_cells(VerificationReport& r, const CellMap& cells) {
  for (const auto& [key, counts] : cells) {
    CountCell c;
    c.arity = key.first;
    c.genus = key.second;
    c.lhs = counts.first;
    c.rhs = counts.second;
    r.cells.push_back(c);
    r.lhs_total += c.lhs;
    r.rhs_total += c.rhs;
  }
}

// Cell-count mismatches rank below any concrete element counterexample.
void require_equal_cells(VerificationReport& r, const CellMap& cells) {
  for (const auto& [key, counts] : cells)
    if (counts.first != counts.second)
      r.fail(INT_MAX - 1, "arity " + std::to_string(key.first) + " genus " +
                              std::to_string(key.second) + ": " +
                              std::to_string(counts.first) + " vs " +
                              std::to_string(counts.second));
}

void mark_undecided(VerificationReport& r) {
  if (r.status == "PASS") r.status = "UNDECIDED";
}

// ---------------------------------------------------------------------------
// Seeded random trees shared by the sampling checks.
// ---------------------------------------------------------------------------

// Random decorated tree grown slot-by-slot within the arity, vertex, and
// genus budgets; slots end up shuffled by a random permutation. Pools index
// candidate decorations by arity and always contain genus-0 entries, so the
// draw below cannot starve.
Tree grow_random_tree(std::mt19937_64& rng, const std::vector<std::vector<Dec>>& pools,
                      int max_arity, int max_vertices, int max_genus) {
  int genus_left = max_genus;
  auto pick_arity = [&](int cap) {
    std::vector<int> options;
    for (int k = 1; k <= cap; ++k)
      if (!pools[static_cast<std::size_t>(k)].empty()) options.push_back(k);
    return options[rng() % options.size()];
  };
  auto draw_dec = [&](int k) {
    std::vector<const Dec*> fits;
    for (const Dec& d : pools[static_cast<std::size_t>(k)])
      if (dec_genus(d) <= genus_left) fits.push_back(&d);
    const Dec& d = *fits[rng() % fits.size()];
    genus_left -= dec_genus(d);
    return d;
  };

  int target = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vertices));
  TreeNode root;
  int k0 = pick_arity(max_arity);
  root.dec = draw_dec(k0);
  for (int i = 0; i < k0; ++i) {
    TreeNode s;
    s.is_slot = true;
    root.kids.push_back(s);
  }
  int vertices = 1;
  int slots = k0;

  while (vertices < target) {
    std::vector<TreeNode*> open;
    std::function<void(TreeNode&)> scan = [&](TreeNode& nd) {
      if (nd.is_slot) {
        open.push_back(&nd);
        return;
      }
      for (TreeNode& kid : nd.kids) scan(kid);
    };
    scan(root);
    TreeNode* at = open[rng() % open.size()];
    int k = pick_arity(max_arity - slots + 1);
    at->is_slot = false;
    at->dec = draw_dec(k);
    for (int i = 0; i < k; ++i) {
      TreeNode s;
      s.is_slot = true;
      at->kids.push_back(s);
    }
    slots += k - 1;
    ++vertices;
  }

  int next = 0;
  std::function<void(TreeNode&)> number = [&](TreeNode& nd) {
    if (nd.is_slot) {
      nd.label = ++next;
      return;
    }
    for (TreeNode& kid : nd.kids) number(kid);
  };
  number(root);

  Tree t = Tree::of(std::move(root));
  const std::vector<Perm> perms = all_perms(t.arity());
  return act(t, perms[rng() % perms.size()]);
}

// Random edge lengths from the full grid on every non-root internal vertex.
Tree with_random_lengths(std::mt19937_64& rng, const Tree& t,
                         const std::vector<Rational>& grid) {
  TreeNode root = t.root();
  std::function<void(TreeNode&, bool)> walk = [&](TreeNode& nd, bool is_root) {
    if (!nd.is_slot && !is_root) nd.len = grid[rng() % grid.size()];
    for (TreeNode& kid : nd.kids) walk(kid, false);
  };
  walk(root, true);
  return Tree::of(std::move(root));
}

// ---------------------------------------------------------------------------
// Explicit tree isomorphism, independent of the canonicalization module.
// ---------------------------------------------------------------------------

bool node_iso(const TreeNode& a, const TreeNode& b) {
  if (a.is_slot != b.is_slot) return false;
  if (a.is_slot) return a.label == b.label;
  if (a.kids.size() != b.kids.size()) return false;
  std::vector<char> used(b.kids.size(), 0);
  std::function<bool(std::size_t)> match = [&](std::size_t i) -> bool {
    if (i == a.kids.size()) return true;
    for (std::size_t j = 0; j < b.kids.size(); ++j) {
      if (used[j] || !node_iso(a.kids[i], b.kids[j])) continue;
      used[j] = 1;
      if (match(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return match(0);
}

// Isomorphism-invariant bucket key: the sorted multiset of per-node
// (depth, slot label | child count) facts.
std::string iso_key(const TreeNode& root) {
  std::vector<std::string> toks;
  std::function<void(const TreeNode&, int)> walk = [&](const TreeNode& nd, int depth) {
    if (nd.is_slot) {
      toks.push_back("s" + std::to_string(depth) + "." + std::to_string(nd.label));
      return;
    }
    toks.push_back("v" + std::to_string(depth) + "." + std::to_string(nd.kids.size()));
    for (const TreeNode& kid : nd.kids) walk(kid, depth + 1);
  };
  walk(root, 0);
  std::sort(toks.begin(), toks.end());
  std::string key;
  for (const std::string& t : toks) {
    key += t;
    key += ',';
  }
  return key;
}

// ---------------------------------------------------------------------------
// Helpers for the weighted-colimit check.
// ---------------------------------------------------------------------------

// Non-trivial elements of a length-weighted instance, boxed so they can
// decorate the vertices of amalgam words.
std::vector<Dec> boxed_elements(const OperadInstance& W, int k, const Bounds& b) {
  std::vector<Dec> out;
  for (const Tree& e : W.elements(k, b)) {
    if (e.is_trivial()) continue;
    std::string code = e.str();
    out.push_back(
        Dec::box(W.name, std::make_shared<const Tree>(e), std::move(code), k));
  }
  return out;
}

// Nodes carried by a boxed weighted element (infinite moduli inside the box).
int box_node_count(const Dec& d) {
  if (d.kind != Dec::Kind::Box || !d.box_tree || d.box_tree->is_trivial()) return 0;
  int count = 0;
  std::function<void(const TreeNode&)> walk = [&](const TreeNode& nd) {
    if (!nd.is_slot) {
      if (nd.dec.kind == Dec::Kind::Mod && nd.dec.mod.is_infinite()) ++count;
      if (nd.dec.kind == Dec::Kind::Srf && nd.dec.srf.kind() == SurfaceDec::Kind::Nodal)
        ++count;
      if (nd.dec.kind == Dec::Kind::Graph) count += nd.dec.graph->node_count();
    }
    for (const TreeNode& kid : nd.kids) walk(kid);
  };
  walk(d.box_tree->root());
  return count;
}

int weighted_node_total(const Tree& t) {
  if (t.is_trivial()) return 0;
  int count = 0;
  std::function<void(const TreeNode&)> walk = [&](const TreeNode& nd) {
    if (!nd.is_slot) {
      if (nd.dec.kind == Dec::Kind::Graph) count += nd.dec.graph->node_count();
      if (nd.dec.kind == Dec::Kind::Mod && nd.dec.mod.is_infinite()) ++count;
      if (nd.dec.kind == Dec::Kind::Srf && nd.dec.srf.kind() == SurfaceDec::Kind::Nodal)
        ++count;
      count += box_node_count(nd.dec);
    }
    for (const TreeNode& kid : nd.kids) walk(kid);
  };
  walk(t.root());
  return count;
}

// Composition always glues blocks along seams of length one, so in any word
// it produces, contracting every seam of non-unit length leaves clusters
// that never mix a node piece with a smooth piece (annulus pieces join
// either kind). This tests that reachability condition directly.
bool unit_seam_colorable(const Tree& t) {
  if (t.is_trivial()) return true;
  std::vector<const TreeNode*> vs;
  std::vector<int> parent;
  std::vector<std::optional<Rational>> len;
  std::function<void(const TreeNode&, int)> walk = [&](const TreeNode& nd, int par) {
    if (nd.is_slot) return;
    int me = static_cast<int>(vs.size());
    vs.push_back(&nd);
    parent.push_back(par);
    len.push_back(nd.len);
    for (const TreeNode& kid : nd.kids) walk(kid, me);
  };
  walk(t.root(), -1);

  std::vector<int> uf(vs.size());
  for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int i) {
    while (uf[static_cast<std::size_t>(i)] != i) {
      uf[static_cast<std::size_t>(i)] =
          uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(i)])];
      i = uf[static_cast<std::size_t>(i)];
    }
    return i;
  };
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (!len[i] || !(*len[i] == Rational(1)))
      uf[static_cast<std::size_t>(find(static_cast<int>(i)))] =
          find(parent[i]);

  std::vector<char> has_node(vs.size(), 0), has_smooth(vs.size(), 0);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Dec& d = vs[i]->dec;
    bool node = false, smooth = false;
    switch (d.kind) {
      case Dec::Kind::Mod:
        node = d.mod.is_infinite();
        break;
      case Dec::Kind::Srf:
        node = d.srf.kind() == SurfaceDec::Kind::Nodal;
        smooth = d.srf.kind() == SurfaceDec::Kind::Smooth;
        break;
      case Dec::Kind::Graph:
        node = d.graph->node_count() > 0;
        smooth = !node && !d.graph->is_annulus_chain();
        break;
      default:
        break;
    }
    auto root = static_cast<std::size_t>(find(static_cast<int>(i)));
    if (node) has_node[root] = 1;
    if (smooth) has_smooth[root] = 1;
  }
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (has_node[i] && has_smooth[i]) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// VerificationReport
// ---------------------------------------------------------------------------

void VerificationReport::fail(int vertex_count, const std::string& description) {
  if (status == "FAIL") {
    if (vertex_count > counterexample_rank) return;
    if (vertex_count == counterexample_rank && counterexample <= description) return;
  }
  status = "FAIL";
  counterexample_rank = vertex_count;
  counterexample = description;
}

std::string VerificationReport::json() const {
  nlohmann::json j;
  j["check"] = check;
  j["status"] = status;
  nlohmann::json jb;
  jb["max_arity"] = bounds.max_arity;
  jb["max_genus"] = bounds.max_genus;
  jb["max_vertices"] = bounds.max_vertices;
  std::vector<std::string> grid;
  for (const Rational& q : bounds.modulus_grid) grid.push_back(rat_str(q));
  jb["modulus_grid"] = grid;
  grid.clear();
  for (const Rational& q : bounds.length_grid) grid.push_back(rat_str(q));
  jb["length_grid"] = grid;
  jb["trial_count"] = bounds.trial_count;
  jb["seed"] = bounds.seed;
  j["bounds"] = jb;
  j["lhs_label"] = lhs_label;
  j["rhs_label"] = rhs_label;
  j["lhs_total"] = lhs_total;
  j["rhs_total"] = rhs_total;
  nlohmann::json jc = nlohmann::json::array();
  for (const CountCell& c : cells) {
    nlohmann::json e;
    e["arity"] = c.arity;
    e["genus"] = c.genus;
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    jc.push_back(e);
  }
  j["cells"] = jc;
  j["checked"] = checked;
  j["counterexample"] = counterexample;
  j["witness"] = witness;
  j["notes"] = notes;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Canonical codes against explicit isomorphism search.
// ---------------------------------------------------------------------------

VerificationReport verify_canonical_codes(int max_vertices, int max_tree_arity,
                                          int max_vertex_arity) {
  Stopwatch sw;
  VerificationReport r;
  r.check = "canonical-codes";
  r.bounds.max_arity = max_tree_arity;
  r.bounds.max_genus = 0;
  r.bounds.max_vertices = max_vertices;
  r.lhs_label = "isomorphism classes of labeled trees";
  r.rhs_label = "distinct canonical codes";

  // Independent planar generator: internal vertices take 0..max_vertex_arity
  // children, each child a slot or another internal vertex, budgets exact.
  using ShapeSink = std::function<void(const TreeNode&, int, int)>;
  std::function<void(int, int, const ShapeSink&)> internal_trees;
  internal_trees = [&](int vmax, int smax, const ShapeSink& sink) {
    if (vmax < 1) return;
    for (int k = 0; k <= max_vertex_arity; ++k) {
      std::vector<TreeNode> kids;
      std::function<void(int, int, int)> extend = [&](int idx, int vused, int sused) {
        if (idx == k) {
          TreeNode nd;
          nd.dec = Dec::unit(k);
          nd.kids = kids;
          sink(nd, vused + 1, sused);
          return;
        }
        if (sused < smax) {
          TreeNode s;
          s.is_slot = true;
          kids.push_back(s);
          extend(idx + 1, vused, sused + 1);
          kids.pop_back();
        }
        internal_trees(vmax - 1 - vused, smax - sused,
                       [&](const TreeNode& sub, int v, int sl) {
                         kids.push_back(sub);
                         extend(idx + 1, vused + v, sused + sl);
                         kids.pop_back();
                       });
      };
      extend(0, 0, 0);
    }
  };

  struct IsoClass {
    TreeNode rep;
    std::set<std::string> codes;
    int verts = 0;
    int arity = 0;
    std::uint64_t presentations = 0;
  };
  std::vector<IsoClass> classes;
  std::map<std::string, std::vector<std::size_t>> buckets;

  internal_trees(max_vertices, max_tree_arity, [&](const TreeNode& shape, int verts,
                                                   int slots) {
    std::vector<Perm> perms = slots > 0 ? all_perms(slots) : std::vector<Perm>{};
    int labelings = slots > 0 ? static_cast<int>(perms.size()) : 1;
    for (int pi = 0; pi < labelings; ++pi) {
      TreeNode labeled = shape;
      int at = 0;
      std::function<void(TreeNode&)> number = [&](TreeNode& nd) {
        if (nd.is_slot) {
          ++at;
          nd.label = slots > 0 ? perms[static_cast<std::size_t>(pi)](at) : at;
          return;
        }
        for (TreeNode& kid : nd.kids) number(kid);
      };
      number(labeled);
      ++r.checked;

      std::string code = canonical_code(Tree::of(labeled), trivial_dec_action);
      std::string key = iso_key(labeled);
      std::size_t cls = classes.size();
      for (std::size_t idx : buckets[key])
        if (node_iso(labeled, classes[idx].rep)) {
          cls = idx;
          break;
        }
      if (cls == classes.size()) {
        buckets[key].push_back(cls);
        classes.push_back({labeled, {}, verts, slots, 0});
      }
      classes[cls].codes.insert(code);
      ++classes[cls].presentations;
    }
  });

  CellMap cells;
  std::map<std::string, std::size_t> by_code;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const IsoClass& c = classes[i];
    cells[{c.arity, 0}].first++;
    if (c.codes.size() != 1)
      r.fail(c.verts, "one abstract tree yields codes " + *c.codes.begin() + " and " +
                          *std::next(c.codes.begin()));
    const std::string& code = *c.codes.begin();
    auto [it, fresh] = by_code.emplace(code, i);
    if (fresh) {
      cells[{c.arity, 0}].second++;
    } else {
      r.fail(std::min(c.verts, classes[it->second].verts),
             "non-isomorphic trees share the code " + code);
    }
    if (r.witness.empty() && c.presentations > 1)
      r.witness = code + " from " + std::to_string(c.presentations) +
                  " planar presentations";
  }

  require_equal_cells(r, cells);
  flatten_cells(r, cells);
  r.elapsed_seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Free elements against labeled shapes times decoration assignments.
// ---------------------------------------------------------------------------

VerificationReport verify_free_split_bijection(const Bounds& b) {
  Stopwatch sw;
  VerificationReport r;
  r.check = "free-split";
  r.bounds = b;
  r.lhs_label = "enumerated free elements over surface decorations";
  r.rhs_label = "labeled shapes times independent decoration assignments";
  r.notes.push_back("arity-1 decorations include the zero-modulus annulus");

  const OperadInstance fr = fr_disc();
  const int G = b.max_genus;

  // Genus histogram of the decoration domain at each arity.
  std::vector<std::vector<std::uint64_t>> hist(
      static_cast<std::size_t>(b.max_arity) + 1,
      std::vector<std::uint64_t>(static_cast<std::size_t>(G) + 1, 0));
  for (int k = 1; k <= b.max_arity; ++k)
    for (const Dec& d : fr.collection.domain(k, b))
      ++hist[static_cast<std::size_t>(k)][static_cast<std::size_t>(dec_genus(d))];

  CellMap cells;
  // shape key -> genus -> count, plus a size rank per key for counterexamples
  std::map<std::string, std::map<int, std::uint64_t>> engine, oracle;
  std::map<std::string, int> rank;

  for (int n = 1; n <= b.max_arity; ++n) {
    auto domain = [&](int k) { return fr.collection.domain(k, b); };
    for_each_element(n, b.max_vertices, b.max_genus, domain, b.max_arity,
                     fr.collection.act, false, [&](const Tree& e) {
      std::string key = underlying_shape(e).str();
      int g = tree_genus(e);
      ++engine[key][g];
      cells[{n, g}].first++;
      rank.emplace(key, e.vertex_count());
    });

    // Independent shape generator: children of a vertex are the blocks of a
    // set partition of its label set, ordered by least label, so every
    // isomorphism class of labeled shapes appears exactly once.
    using PartSink = std::function<void()>;
    std::vector<std::vector<int>> blocks;
    std::function<void(const std::vector<int>&, int, const PartSink&)> partitions;
    partitions = [&](const std::vector<int>& labels, int k, const PartSink& done) {
      if (k == 1) {
        blocks.push_back(labels);
        done();
        blocks.pop_back();
        return;
      }
      if (static_cast<int>(labels.size()) < k) return;
      std::vector<int> rest(labels.begin() + 1, labels.end());
      int m = static_cast<int>(rest.size());
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        int taken = 0;
        for (int i = 0; i < m; ++i)
          if (mask & (1u << i)) ++taken;
        if (m - taken < k - 1) continue;
        std::vector<int> first{labels[0]}, remaining;
        for (int i = 0; i < m; ++i)
          (mask & (1u << i) ? first : remaining).push_back(rest[static_cast<std::size_t>(i)]);
        blocks.push_back(first);
        partitions(remaining, k - 1, done);
        blocks.pop_back();
      }
    };

    using TreeSink = std::function<void(const TreeNode&, int)>;
    std::function<void(const std::vector<int>&, int, const TreeSink&)> shapes;
    shapes = [&](const std::vector<int>& labels, int vmax, const TreeSink& sink) {
      if (vmax < 1) return;
      int top = std::min(b.max_arity, static_cast<int>(labels.size()));
      for (int k = 1; k <= top; ++k) {
        partitions(labels, k, [&]() {
          std::vector<std::vector<int>> my(blocks.end() - k, blocks.end());
          std::vector<TreeNode> kids;
          std::function<void(std::size_t, int)> step = [&](std::size_t bi, int vused) {
            if (bi == my.size()) {
              TreeNode nd;
              nd.dec = Dec::unit(k);
              nd.kids = kids;
              sink(nd, vused + 1);
              return;
            }
            if (my[bi].size() == 1) {
              TreeNode s;
              s.is_slot = true;
              s.label = my[bi][0];
              kids.push_back(s);
              step(bi + 1, vused);
              kids.pop_back();
            }
            shapes(my[bi], vmax - 1 - vused, [&](const TreeNode& sub, int v) {
              kids.push_back(sub);
              step(bi + 1, vused + v);
              kids.pop_back();
            });
          };
          step(0, 0);
        });
      }
    };

    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i + 1;
    std::set<std::string> seen;
    shapes(labels, b.max_vertices, [&](const TreeNode& root, int verts) {
      Tree shape = Tree::of(root);
      std::string key = underlying_shape(shape).str();
      if (!seen.insert(key).second) {
        r.fail(verts, "two distinct labeled shapes share the key " + key);
        return;
      }
      rank.emplace(key, verts);

      std::vector<int> arities;
      std::function<void(const TreeNode&)> walk = [&](const TreeNode& nd) {
        if (nd.is_slot) return;
        arities.push_back(static_cast<int>(nd.kids.size()));
        for (const TreeNode& kid : nd.kids) walk(kid);
      };
      walk(root);

      std::vector<std::uint64_t> acc{1};
      for (int k : arities) {
        std::vector<std::uint64_t> next(static_cast<std::size_t>(G) + 1, 0);
        for (std::size_t a = 0; a < acc.size(); ++a)
          for (std::size_t g = 0; a + g <= static_cast<std::size_t>(G); ++g)
            next[a + g] += acc[a] * hist[static_cast<std::size_t>(k)][g];
        acc = std::move(next);
      }
      for (std::size_t g = 0; g < acc.size(); ++g)
        if (acc[g] > 0) {
          oracle[key][static_cast<int>(g)] += acc[g];
          cells[{n, static_cast<int>(g)}].second += acc[g];
        }
    });
  }

  for (const auto& [key, by_genus] : engine) {
    auto it = oracle.find(key);
    for (const auto& [g, count] : by_genus) {
      ++r.checked;
      std::uint64_t expect = it == oracle.end() ? 0 : it->second.count(g) ? it->second.at(g) : 0;
      if (count != expect)
        r.fail(rank[key], "shape " + key + " genus " + std::to_string(g) + ": " +
                              std::to_string(count) + " elements vs " +
                              std::to_string(expect) + " assignments");
      else if (r.witness.empty() && rank[key] > 1)
        r.witness = "shape " + key + " genus " + std::to_string(g) + ": " +
                    std::to_string(count) + " elements";
    }
  }
  for (const auto& [key, by_genus] : oracle) {
    if (engine.count(key)) continue;
    std::uint64_t total = 0;
    for (const auto& [g, count] : by_genus) total += count;
    if (total > 0) r.fail(rank[key], "no enumerated element has the shape " + key);
  }

  require_equal_cells(r, cells);
  flatten_cells(r, cells);
  r.elapsed_seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// The amalgam of annuli, nodal annuli, and surfaces against dual graphs.
// ---------------------------------------------------------------------------

VerificationReport verify_geometric_pushout(const Bounds& b) {
  Stopwatch sw;
  VerificationReport r;
  r.check = "geometric-pushout";
  r.bounds = b;
  r.lhs_label = "rewrite-normal words of glued annuli and surfaces";
  r.rhs_label = "stable tree-like dual graphs";

  PushoutSystem sys = surface_pushout(b);
  const OperadInstance fr = fr_disc();
  const OperadInstance nodann = nodann_disc();
  auto domain = [&](int k) {
    std::vector<Dec> out = fr.collection.domain(k, b);
    std::vector<Dec> more = nodann.collection.domain(k, b);
    out.insert(out.end(), more.begin(), more.end());
    return out;
  };

  CellMap cells;
  std::map<std::string, Tree> image;  // dual graph -> the normal form reaching it
  std::vector<Tree> normals;

  for (int n = 1; n <= b.max_arity; ++n) {
    // Streamed: the full element list at these bounds is far too large to
    // hold, so canonical words are counted as they are generated and only the
    // rewrite-normal ones are materialized. Rules fire on decorations and
    // planar positions, never on slot labels, so one rule query per planar
    // tree settles normality for all of its relabelings.
    auto perms = all_perms(n);
    for_each_planar_tree(n, b.max_vertices, b.max_genus, domain, b.max_arity,
                         [&](Tree&& p) {
      bool normal = applicable_rules(sys, p).empty();
      for (const Perm& s : perms) {
        if (!act_is_canonical(p, s, sys.act)) continue;
        ++r.checked;
        if (!normal) continue;
        Tree e = act(p, s);
        DualGraph g = erase_seams(e);
        if (g.arity() != n) {
          r.fail(e.vertex_count(), "seam erasure changed the arity of " + e.str());
          continue;
        }
        if (g.total_genus() != tree_genus(e)) {
          r.fail(e.vertex_count(), "seam erasure changed the genus of " + e.str());
          continue;
        }
        cells[{n, g.total_genus()}].first++;
        auto [it, fresh] = image.emplace(g.str(), e);
        if (!fresh)
          r.fail(e.vertex_count(), "normal forms " + it->second.str() + " and " +
                                       e.str() + " both reach " + g.str());
        normals.push_back(e);
        if (r.witness.empty() && e.vertex_count() >= 2)
          r.witness = e.str() + " => " + g.str();
      }
    });

    GraphEnumOpts opts;
    opts.arity = n;
    opts.max_total_genus = b.max_genus;
    opts.max_comps = b.max_vertices + 1;
    opts.max_dec_size = b.max_vertices;
    opts.require_decomposable = true;
    opts.include_pure_annuli = true;
    opts.annulus_grid = b.modulus_grid;
    for (const DualGraph& g : enumerate_dual_graphs(opts)) {
      ++r.checked;
      cells[{n, g.total_genus()}].second++;
      if (!image.count(g.str()))
        r.fail(graph_dec_size(g), "no normal form reaches " + g.str());
    }
  }
  require_equal_cells(r, cells);

  // The correspondence respects partial composition on sampled pairs: gluing
  // then erasing seams equals composing the dual graphs, with or without an
  // intervening rewrite to normal form.
  std::mt19937_64 rng(b.seed);
  for (int trial = 0; trial < b.trial_count && !normals.empty(); ++trial) {
    const Tree& x = normals[rng() % normals.size()];
    const Tree& y = normals[rng() % normals.size()];
    int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(x.arity()));
    Tree glued = partial_graft(x, i, y);
    std::string direct = erase_seams(glued).str();
    std::string via_normal = erase_seams(normal_form(sys, sys.canon(glued)).tree).str();
    std::vector<DualGraph> parts(static_cast<std::size_t>(x.arity()),
                                 DualGraph::annulus(Modulus()));
    parts[static_cast<std::size_t>(i - 1)] = erase_seams(y);
    std::string algebraic = nodfr_compose(erase_seams(x), parts).str();
    ++r.checked;
    if (direct != via_normal || direct != algebraic)
      r.fail(glued.vertex_count(),
             "composition at input " + std::to_string(i) + " of " + x.str() + " and " +
                 y.str() + " disagrees: " + direct + " / " + via_normal + " / " +
                 algebraic);
  }

  flatten_cells(r, cells);
  r.elapsed_seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// The weighted amalgam against protected weighted nodal words.
// ---------------------------------------------------------------------------

VerificationReport verify_w_colimit(const Bounds& b) {
  Stopwatch sw;
  VerificationReport r;
  r.check = "w-colimit";
  r.bounds = b;
  r.lhs_label = "rewrite-normal words of weighted annulus and surface blocks";
  r.rhs_label = "protected weighted nodal words reachable by unit-seam gluing";

  PushoutSystem sys = w_surface_pushout();
  const OperadInstance wp = w_of(nodann_disc());
  const OperadInstance wq = w_of(fr_disc());
  const OperadInstance wnod = w_of(nodfr_disc());
  const int piece_cap = b.max_vertices;
  const int node_cap = 1;
  r.notes.push_back("budgets: " + std::to_string(piece_cap) +
                    " weighted pieces and 1 node per word");

  struct BoxItem {
    Dec dec;
    int pieces = 0;
    int nodes = 0;
    int genus = 0;
  };
  std::vector<std::vector<BoxItem>> pools(static_cast<std::size_t>(b.max_arity) + 1);
  for (const OperadInstance* inst : {&wp, &wq})
    for (int k = 1; k <= b.max_arity; ++k)
      for (const Dec& d : boxed_elements(*inst, k, b)) {
        BoxItem item;
        item.dec = d;
        item.pieces = d.box_tree ? d.box_tree->vertex_count() : 1;
        item.nodes = box_node_count(d);
        item.genus = dec_genus(d);
        if (item.pieces <= piece_cap && item.nodes <= node_cap &&
            item.genus <= b.max_genus)
          pools[static_cast<std::size_t>(k)].push_back(item);
      }

  CellMap cells;
  std::map<std::string, Tree> image;  // flattened word -> the normal form
  std::vector<Tree> normals, flats;
  std::uint64_t seam_excluded = 0;

  for (int n = 1; n <= b.max_arity; ++n) {
    // Planar words with exactly n slots within the piece, node, and genus
    // budgets; every subtree owns at least one slot.
    std::vector<Tree> planar;
    using GenSink = std::function<void(const TreeNode&, int, int, int)>;
    std::function<void(int, int, int, int, const GenSink&)> gen;
    gen = [&](int slots, int pieces, int nodes, int genus, const GenSink& sink) {
      for (int k = 1; k <= std::min(b.max_arity, slots); ++k) {
        for (const BoxItem& item : pools[static_cast<std::size_t>(k)]) {
          if (item.pieces > pieces || item.nodes > nodes || item.genus > genus)
            continue;
          std::vector<TreeNode> kids;
          std::function<void(int, int, int, int, int)> step =
              [&](int idx, int slots_left, int p_used, int n_used, int g_used) {
                if (idx == k) {
                  if (slots_left != 0) return;  // every slot must be placed
                  TreeNode nd;
                  nd.dec = item.dec;
                  nd.kids = kids;
                  sink(nd, p_used, n_used, g_used);
                  return;
                }
                int kids_after = k - idx - 1;
                if (slots_left - 1 >= kids_after) {
                  TreeNode s;
                  s.is_slot = true;
                  kids.push_back(s);
                  step(idx + 1, slots_left - 1, p_used, n_used, g_used);
                  kids.pop_back();
                }
                for (int si = 2; si <= slots_left - kids_after; ++si)
                  gen(si, pieces - p_used, nodes - n_used, genus - g_used,
                      [&](const TreeNode& sub, int sp, int sn, int sg) {
                        kids.push_back(sub);
                        step(idx + 1, slots_left - si, p_used + sp, n_used + sn,
                             g_used + sg);
                        kids.pop_back();
                      });
                if (slots_left - 1 >= kids_after)
                  gen(1, pieces - p_used, nodes - n_used, genus - g_used,
                      [&](const TreeNode& sub, int sp, int sn, int sg) {
                        kids.push_back(sub);
                        step(idx + 1, slots_left - 1, p_used + sp, n_used + sn,
                             g_used + sg);
                        kids.pop_back();
                      });
              };
          step(0, slots, item.pieces, item.nodes, item.genus);
        }
      }
    };
    gen(n, piece_cap, node_cap, b.max_genus, [&](const TreeNode& root, int, int, int) {
      TreeNode labeled = root;
      int next = 0;
      std::function<void(TreeNode&)> number = [&](TreeNode& nd) {
        if (nd.is_slot) {
          nd.label = ++next;
          return;
        }
        for (TreeNode& kid : nd.kids) number(kid);
      };
      number(labeled);
      planar.push_back(Tree::of(std::move(labeled)));
    });

    const std::vector<Perm> perms = all_perms(n);
    std::vector<Tree> canons(planar.size() * perms.size(), Tree::trivial());
    parallel_for(canons.size(), [&](std::size_t i) {
      const Tree& t = planar[i / perms.size()];
      canons[i] = sys.canon(act(t, perms[i % perms.size()]));
    });
    std::map<std::string, Tree> elems;
    for (Tree& c : canons) elems.emplace(c.str(), std::move(c));

    std::vector<const Tree*> list;
    for (const auto& [code, t] : elems) list.push_back(&t);
    std::vector<char> is_normal(list.size(), 0);
    parallel_for(list.size(), [&](std::size_t i) {
      is_normal[i] = applicable_rules(sys, *list[i]).empty() ? 1 : 0;
    });
    r.checked += list.size();

    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!is_normal[i]) continue;
      const Tree& e = *list[i];
      Tree flat = sys.invariant(e);
      if (!w_is_protected(flat)) {
        r.fail(e.vertex_count(),
               "normal form " + e.str() + " flattens to the unprotected " + flat.str());
        continue;
      }
      cells[{n, tree_genus(flat)}].first++;
      auto [it, fresh] = image.emplace(flat.str(), e);
      if (!fresh)
        r.fail(e.vertex_count(), "normal forms " + it->second.str() + " and " + e.str() +
                                     " both flatten to " + flat.str());
      normals.push_back(e);
      flats.push_back(std::move(flat));
      if (r.witness.empty() && e.vertex_count() >= 2)
        r.witness = e.str() + " => " + flats.back().str();
    }

    for (const Tree& e : wnod.elements(n, b)) {
      if (e.is_trivial() || !w_is_protected(e)) continue;
      if (weighted_node_total(e) > node_cap) continue;
      if (!unit_seam_colorable(e)) {
        ++seam_excluded;
        continue;
      }
      ++r.checked;
      cells[{n, tree_genus(e)}].second++;
      if (!image.count(e.str()))
        r.fail(e.vertex_count(), "no normal form flattens to " + e.str());
    }
  }
  require_equal_cells(r, cells);
  if (seam_excluded > 0)
    r.notes.push_back(std::to_string(seam_excluded) +
                      " protected words excluded: a seam of non-unit length joins a "
                      "node piece to a smooth piece, which unit-seam gluing never "
                      "produces");

  // Flattening respects partial composition on sampled pairs, with and
  // without an intervening rewrite to normal form.
  std::mt19937_64 rng(b.seed);
  for (int trial = 0; trial < b.trial_count && !normals.empty(); ++trial) {
    std::size_t xi = rng() % normals.size();
    std::size_t yi = rng() % normals.size();
    const Tree& x = normals[xi];
    const Tree& y = normals[yi];
    int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(x.arity()));
    Tree glued = sys.canon(partial_graft(x, i, y));
    std::string direct = sys.invariant(glued).str();
    std::string via_normal = sys.invariant(normal_form(sys, glued).tree).str();
    std::string algebraic = wnod.pcomp(flats[xi], i, flats[yi]).str();
    ++r.checked;
    if (direct != via_normal || direct != algebraic)
      r.fail(glued.vertex_count(),
             "composition at input " + std::to_string(i) + " of " + x.str() + " and " +
                 y.str() + " disagrees: " + direct + " / " + via_normal + " / " +
                 algebraic);
  }

  flatten_cells(r, cells);
  r.elapsed_seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Capping retracts boundary substitution on marked skeletons.
// ---------------------------------------------------------------------------

namespace {
int comp_count(const CompNode& c) {
  int n = 1;
  for (const CompNode& kid : c.children) n += comp_count(kid);
  return n;
}
}  // namespace

VerificationReport verify_fr_cap_retract(const Bounds& b) {
  Stopwatch sw;
  VerificationReport r;
  r.check = "fr-cap-retract";
  r.bounds = b;
  r.lhs_label = "stable marked skeletons";
  r.rhs_label = "skeletons recovered after boundary substitution and capping";

  CellMap cells;
  for (int n = 1; n <= b.max_arity; ++n) {
    for (const MarkedSkeleton& s :
         enumerate_marked_skeletons(n, b.max_genus, b.max_vertices)) {
      ++r.checked;
      int size = comp_count(s.root());
      cells[{n, s.total_genus()}].first++;
      std::optional<DualGraph> g = fr_map(s);
      if (!g) {
        r.fail(size, "boundary substitution rejected the stable skeleton " + s.str());
        continue;
      }
      CapResult capped = cap_map(*g);
      if (capped.degenerate || !capped.skeleton) {
        r.fail(size, "capping degenerated the image of " + s.str());
        continue;
      }
      if (!(*capped.skeleton == s)) {
        r.fail(size, "round trip changed " + s.str() + " into " +
                         capped.skeleton->str());
        continue;
      }
      cells[{n, s.total_genus()}].second++;
      if (r.witness.empty() && size >= 2)
        r.witness = s.str() + " => " + g->str() + " => " + capped.skeleton->str();
    }
    for (int g = 0; g <= b.max_genus; ++g)
      if (!cells.count({n, g})) {
        cells[{n, g}] = {0, 0};
        r.notes.push_back("SKIPPED: arity " + std::to_string(n) + " genus " +
                          std::to_string(g) + ": no stable skeleton within bounds");
      }
  }

  require_equal_cells(r, cells);
  flatten_cells(r, cells);
  r.elapsed_seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Seeded elements of the amalgam presentations.
// ---------------------------------------------------------------------------

std::vector<Tree> seeded_amalgam_elements(const PushoutSystem& sys, const Bounds& b,
                                          int count) {
  std::mt19937_64 rng(b.seed * 0x100000001b3ULL + 0xcbf29ce484222325ULL);
  std::vector<std::vector<Dec>> pools(static_cast<std::size_t>(b.max_arity) + 1);
  if (sys.w_mode) {
    const OperadInstance wp = w_of(nodann_disc());
    const OperadInstance wq = w_of(fr_disc());
    Bounds inner = b;
    inner.max_vertices = 2;  // at most two weighted pieces per block
    for (int k = 1; k <= b.max_arity; ++k) {
      pools[static_cast<std::size_t>(k)] = boxed_elements(wp, k, inner);
      std::vector<Dec> more = boxed_elements(wq, k, inner);
      pools[static_cast<std::size_t>(k)].insert(pools[static_cast<std::size_t>(k)].end(),
                                                more.begin(), more.end());
    }
  } else {
    const OperadInstance fr = fr_disc();
    const OperadInstance nodann = nodann_disc();
    for (int k = 1; k <= b.max_arity; ++k) {
      pools[static_cast<std::size_t>(k)] = fr.collection.domain(k, b);
      std::vector<Dec> more = nodann.collection.domain(k, b);
      pools[static_cast<std::size_t>(k)].insert(pools[static_cast<std::size_t>(k)].end(),
                                                more.begin(), more.end());
    }
  }
  std::vector<Tree> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(sys.canon(
        grow_random_tree(rng, pools, b.max_arity, b.max_vertices, b.max_genus)));
  return out;
}

// ---------------------------------------------------------------------------
// Closure membership against normal forms and the word-problem oracle.
// ---------------------------------------------------------------------------

VerificationReport verify_closure_agreement(const PushoutSystem& sys, const Bounds& b,
                                            int starts) {
  Stopwatch sw;
  VerificationReport r;
  r.check = "closure-agreement";
  r.bounds = b;
  r.lhs_label = "closure members sharing the seed's normal form";
  r.rhs_label = "word-problem verdicts matching the normal forms";
  constexpr std::size_t kStateCap = 512;
  constexpr std::size_t kExhaustive = 25;
  r.notes.push_back("closure exploration capped at 512 states per seed");

  std::vector<Tree> seeds = seeded_amalgam_elements(sys, b, starts);

  // Class-preserving neighbor moves assembled from the public engine: every
  // oriented rule, every crossover regardless of orientation, and the
  // registered same-side splits.
  auto neighbors = [&sys](const Tree& t) {
    std::vector<Tree> out;
    if (t.is_trivial()) return out;
    for (const RewriteRule& rule : applicable_rules(sys, t))
      out.push_back(apply_rule(sys, t, rule));
    int index = 0;
    std::function<void(const TreeNode&)> walk = [&](const TreeNode& nd) {
      if (nd.is_slot) return;
      if (sys.a_image(nd.dec)) {
        RewriteRule rule;
        rule.kind = RewriteRule::Kind::Flip;
        rule.vertex = index;
        out.push_back(apply_rule(sys, t, rule));
      }
      ++index;
      for (const TreeNode& kid : nd.kids) walk(kid);
    };
    walk(t.root());
    if (sys.expansions)
      for (const Tree& e : sys.expansions(t)) out.push_back(e);
    return out;
  };

  struct SeedResult {
    std::string nf_code;
    std::uint64_t members_checked = 0;
    std::uint64_t eq_checked = 0;
    std::uint64_t agreements = 0;
    std::uint64_t eq_agreements = 0;
    bool undecided = false;
    std::string failure;  // empty when the seed's closure is consistent
    int failure_rank = INT_MAX;
    std::string witness;
  };
  std::vector<SeedResult> results(seeds.size());

  parallel_for(seeds.size(), [&](std::size_t si) {
    const Tree& seed = seeds[si];
    SeedResult& res = results[si];
    NormalFormResult nf = normal_form(sys, seed);
    res.nf_code = nf.tree.str();
    int cap = std::max(seed.vertex_count(), nf.tree.vertex_count()) + 2;

    std::set<std::string> visited{seed.str()};
    std::vector<Tree> members{seed};
    std::size_t scan = 0;
    while (scan < members.size() && members.size() < kStateCap) {
      Tree current = members[scan++];
      for (const Tree& nb : neighbors(current)) {
        if (nb.vertex_count() > cap) continue;
        if (!visited.insert(nb.str()).second) continue;
        members.push_back(nb);
        if (members.size() >= kStateCap) break;
      }
    }

    for (const Tree& m : members) {
      ++res.members_checked;
      std::string code = normal_form(sys, m).tree.str();
      if (code != res.nf_code) {
        if (res.failure.empty()) {
          res.failure = seed.str() + " and its closure member " + m.str() +
                        " reach different normal forms";
          res.failure_rank = m.vertex_count();
        }
      } else {
        ++res.agreements;
      }
    }
    if (members.size() >= 2 && res.witness.empty())
      res.witness = seed.str() + " ~ " + members[1].str() + " => " + res.nf_code;

    std::mt19937_64 rng(b.seed + si);
    std::vector<std::size_t> picks;
    if (members.size() <= kExhaustive) {
      for (std::size_t i = 0; i < members.size(); ++i) picks.push_back(i);
    } else {
      for (int i = 0; i < 5; ++i) picks.push_back(rng() % members.size());
    }
    for (std::size_t mi : picks) {
      ++res.eq_checked;
      Tri verdict = equal_in_pushout(sys, seed, members[mi]);
      if (verdict == Tri::True) {
        ++res.eq_agreements;
      } else if (verdict == Tri::False) {
        if (res.failure.empty()) {
          res.failure = seed.str() + " declared different from its closure member " +
                        members[mi].str();
          res.failure_rank = members[mi].vertex_count();
        }
      } else {
        res.undecided = true;
      }
    }
  });

  std::vector<std::string> nf_codes(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const SeedResult& res = results[i];
    nf_codes[i] = res.nf_code;
    r.checked += res.members_checked + res.eq_checked;
    r.lhs_total += res.agreements;
    r.rhs_total += res.eq_agreements;
    if (!res.failure.empty()) r.fail(res.failure_rank, res.failure);
    if (res.undecided) {
      mark_undecided(r);
      r.notes.push_back("undecided verdict in the closure of " + seeds[i].str());
    }
    if (r.witness.empty() && !res.witness.empty()) r.witness = res.witness;
  }

  // Cross-checks between seeds: words sharing the evaluation invariant must
  // share normal forms and be declared equal; words with different
  // invariants must differ on both accounts.
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    groups[sys.invariant(seeds[i]).str()].push_back(i);
  std::vector<const std::vector<std::size_t>*> with_pairs;
  for (const auto& [key, idxs] : groups)
    if (idxs.size() >= 2) with_pairs.push_back(&idxs);

  std::mt19937_64 rng(b.seed ^ 0xa5a5a5a5a5a5a5a5ULL);
  for (int trial = 0; trial < b.trial_count && !with_pairs.empty(); ++trial) {
    const std::vector<std::size_t>& idxs = *with_pairs[rng() % with_pairs.size()];
    std::size_t i = idxs[rng() % idxs.size()];
    std::size_t j = idxs[rng() % idxs.size()];
    if (i == j) continue;
    ++r.checked;
    Tri verdict = equal_in_pushout(sys, seeds[i], seeds[j]);
    if (nf_codes[i] != nf_codes[j] || verdict == Tri::False)
      r.fail(std::max(seeds[i].vertex_count(), seeds[j].vertex_count()),
             seeds[i].str() + " and " + seeds[j].str() +
                 " share their invariant but separate");
    else if (verdict == Tri::Undecided)
      mark_undecided(r);
    else
      ++r.rhs_total;
  }
  if (groups.size() >= 2) {
    std::vector<const std::vector<std::size_t>*> all_groups;
    for (const auto& [key, idxs] : groups) all_groups.push_back(&idxs);
    for (int trial = 0; trial < b.trial_count; ++trial) {
      std::size_t ga = rng() % all_groups.size();
      std::size_t gb = rng() % all_groups.size();
      if (ga == gb) continue;
      std::size_t i = (*all_groups[ga])[rng() % all_groups[ga]->size()];
      std::size_t j = (*all_groups[gb])[rng() % all_groups[gb]->size()];
      ++r.checked;
      Tri verdict = equal_in_pushout(sys, seeds[i], seeds[j]);
      if (nf_codes[i] == nf_codes[j] || verdict == Tri::True)
        r.fail(std::max(seeds[i].vertex_count(), seeds[j].vertex_count()),
               seeds[i].str() + " and " + seeds[j].str() +
                   " have different invariants but merge");
      else if (verdict == Tri::Undecided)
        mark_undecided(r);
      else
        ++r.rhs_total;
    }
  }

  r.elapsed_seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Cluster counting against pairwise contraction on weighted surface trees.
// ---------------------------------------------------------------------------

VerificationReport verify_hd_contract(const Bounds& b, int samples) {
  Stopwatch sw;
  VerificationReport r;
  r.check = "hd-contract";
  r.bounds = b;
  r.lhs_label = "cluster-counted seam removals";
  r.rhs_label = "pairwise zero-seam contractions";

  const OperadInstance fr = fr_disc();
  std::vector<std::vector<Dec>> pools(static_cast<std::size_t>(b.max_arity) + 1);
  for (int k = 1; k <= b.max_arity; ++k)
    pools[static_cast<std::size_t>(k)] = fr.collection.domain(k, b);

  std::mt19937_64 rng(b.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Tree> trees;
  trees.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    Tree t = grow_random_tree(rng, pools, b.max_arity, b.max_vertices, b.max_genus);
    trees.push_back(with_random_lengths(rng, t, b.length_grid));
  }

  std::vector<std::pair<std::string, std::string>> outcomes(trees.size());
  parallel_for(trees.size(), [&](std::size_t i) {
    outcomes[i] = {hd_normalize(trees[i]).str(), w_contract(fr, trees[i]).str()};
  });

  for (std::size_t i = 0; i < trees.size(); ++i) {
    ++r.checked;
    if (outcomes[i].first != outcomes[i].second) {
      r.fail(trees[i].vertex_count(), trees[i].str() + ": cluster counting gives " +
                                          outcomes[i].first + ", contraction gives " +
                                          outcomes[i].second);
      continue;
    }
    ++r.lhs_total;
    ++r.rhs_total;
    if (r.witness.empty() && w_zero_edge_count(trees[i]) > 0)
      r.witness = trees[i].str() + " => " + outcomes[i].first;
  }

  r.elapsed_seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Confluence sampling.
// ---------------------------------------------------------------------------

VerificationReport verify_confluence(const PushoutSystem& sys, const Bounds& b,
                                     int starts) {
  Stopwatch sw;
  VerificationReport r;
  r.check = "confluence";
  r.bounds = b;
  r.lhs_label = "seeded start words (" + sys.name + ")";
  r.rhs_label = "words with a single final code across sampled rewrite orders";

  std::vector<Tree> seeds = seeded_amalgam_elements(sys, b, starts);
  std::vector<std::vector<std::string>> outcomes(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    outcomes[i] = confluence_sample(sys, seeds[i], b.trial_count,
                                    b.seed + static_cast<std::uint64_t>(i));
  });

  r.lhs_total = seeds.size();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    r.checked += static_cast<std::uint64_t>(b.trial_count);
    bool budget = false;
    for (const std::string& code : outcomes[i])
      if (code.rfind("!budget ", 0) == 0) budget = true;
    if (budget) {
      mark_undecided(r);
      r.notes.push_back("rewrite budget exceeded on " + seeds[i].str());
      continue;
    }
    if (outcomes[i].size() != 1) {
      r.fail(seeds[i].vertex_count(),
             seeds[i].str() + " reached " + std::to_string(outcomes[i].size()) +
                 " distinct final codes");
      continue;
    }
    ++r.rhs_total;
    if (r.witness.empty() && seeds[i].vertex_count() >= 2)
      r.witness = seeds[i].str() + " => " + outcomes[i][0];
  }

  r.elapsed_seconds = sw.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Check registry.
// ---------------------------------------------------------------------------

std::vector<std::string> check_names() {
  return {"free-split", "geometric-pushout", "w-colimit", "fr-cap-retract"};
}

std::optional<VerificationReport> run_check(const std::string& name, const Bounds& b) {
  if (name == "free-split") return verify_free_split_bijection(b);
  if (name == "geometric-pushout") return verify_geometric_pushout(b);
  if (name == "w-colimit") return verify_w_colimit(b);
  if (name == "fr-cap-retract") return verify_fr_cap_retract(b);
  return std::nullopt;
}

}  // namespace oforge
