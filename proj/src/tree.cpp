#include "oforge/tree.hpp"

#include <algorithm>
#include <cassert>

namespace oforge {

// ---------------------------------------------------------------------------
// Dec
// ---------------------------------------------------------------------------

Dec Dec::unit(int n) {
  Dec d;
  d.kind = Kind::Unit;
  d.n = n;
  return d;
}

Dec Dec::sym(std::string name, int n) {
  Dec d;
  d.kind = Kind::Sym;
  d.name = std::move(name);
  d.n = n;
  return d;
}

Dec Dec::modulus(const Modulus& m) {
  Dec d;
  d.kind = Kind::Mod;
  d.mod = m;
  d.n = 1;
  return d;
}

Dec Dec::surface(const SurfaceDec& s) {
  Dec d;
  d.kind = Kind::Srf;
  d.srf = s;
  d.n = s.arity();
  return d;
}

Dec Dec::dual_graph(DualGraph g) {
  Dec d;
  d.kind = Kind::Graph;
  d.n = g.arity();
  d.graph = std::move(g);
  return d;
}

Dec Dec::box(std::string inst, std::shared_ptr<const Tree> tree, std::string code,
             int n) {
  Dec d;
  d.kind = Kind::Box;
  d.box_inst = std::move(inst);
  d.box_tree = std::move(tree);
  d.box_code = std::move(code);
  d.n = n;
  return d;
}

std::string Dec::str() const {
  switch (kind) {
    case Kind::Unit: return "_";
    case Kind::Sym: return "sym " + name + " n=" + std::to_string(n);
    case Kind::Mod: return mod.is_infinite() ? "nod" : "nod " + rat_str(mod.value());
    case Kind::Srf: return srf.str();
    case Kind::Graph: return graph->str();
    case Kind::Box: return "(box " + box_inst + " " + box_code + ")";
  }
  return "";
}

bool Dec::operator==(const Dec& o) const {
  if (kind != o.kind || n != o.n) return false;
  switch (kind) {
    case Kind::Unit: return true;
    case Kind::Sym: return name == o.name;
    case Kind::Mod: return mod == o.mod;
    case Kind::Srf: return srf == o.srf;
    case Kind::Graph: return *graph == *o.graph;
    case Kind::Box: return box_inst == o.box_inst && box_code == o.box_code;
  }
  return false;
}

Dec trivial_dec_action(const Dec& d, const Perm& s) {
  (void)s;
  return d;
}

// ---------------------------------------------------------------------------
// Tree construction and structural queries
// ---------------------------------------------------------------------------

namespace {

void collect_slot_labels(const TreeNode& nd, std::vector<int>& out) {
  if (nd.is_slot) {
    out.push_back(nd.label);
    return;
  }
  for (const auto& k : nd.kids) collect_slot_labels(k, out);
}

bool node_well_formed(const TreeNode& nd) {
  if (nd.is_slot) return nd.kids.empty();
  if (static_cast<int>(nd.kids.size()) != nd.dec.n) return false;
  for (const auto& k : nd.kids)
    if (!node_well_formed(k)) return false;
  return true;
}

int count_vertices(const TreeNode& nd) {
  if (nd.is_slot) return 0;
  int n = 1;
  for (const auto& k : nd.kids) n += count_vertices(k);
  return n;
}

bool any_length(const TreeNode& nd) {
  if (nd.len) return true;
  for (const auto& k : nd.kids)
    if (any_length(k)) return true;
  return false;
}

bool nodes_equal(const TreeNode& a, const TreeNode& b) {
  if (a.is_slot != b.is_slot) return false;
  if (a.is_slot) return a.label == b.label;
  if (!(a.dec == b.dec) || a.len != b.len || a.kids.size() != b.kids.size())
    return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!nodes_equal(a.kids[i], b.kids[i])) return false;
  return true;
}

std::string print_node(const TreeNode& nd) {
  if (nd.is_slot) return "#" + std::to_string(nd.label);
  std::string s = "(" + nd.dec.str();
  if (nd.len) s += " @" + rat_str(*nd.len);
  for (const auto& k : nd.kids) s += " " + print_node(k);
  s += ")";
  return s;
}

void add_slot_offset(TreeNode& nd, int off) {
  if (nd.is_slot) {
    nd.label += off;
    return;
  }
  for (auto& k : nd.kids) add_slot_offset(k, off);
}

}  // namespace

Tree Tree::trivial() { return Tree(); }

Tree Tree::corolla(Dec d) {
  TreeNode root;
  root.dec = std::move(d);
  for (int i = 1; i <= root.dec.n; ++i) {
    TreeNode slot;
    slot.is_slot = true;
    slot.label = i;
    root.kids.push_back(slot);
  }
  return of(std::move(root));
}

Tree Tree::of(TreeNode root) {
  assert(node_well_formed(root));
  std::vector<int> labels;
  collect_slot_labels(root, labels);
  std::sort(labels.begin(), labels.end());
  for (size_t i = 0; i < labels.size(); ++i)
    assert(labels[i] == static_cast<int>(i) + 1);
  assert(!root.len);
  Tree t;
  t.arity_ = static_cast<int>(labels.size());
  t.root_ = std::move(root);
  return t;
}

int Tree::vertex_count() const { return root_ ? count_vertices(*root_) : 0; }

bool Tree::has_lengths() const { return root_ ? any_length(*root_) : false; }

bool Tree::operator==(const Tree& o) const {
  if (is_trivial() != o.is_trivial()) return false;
  if (is_trivial()) return true;
  return nodes_equal(*root_, *o.root_);
}

std::string Tree::str() const { return root_ ? print_node(*root_) : "|"; }

// ---------------------------------------------------------------------------
// Grafting and the label action
// ---------------------------------------------------------------------------

namespace {

TreeNode graft_node(const TreeNode& nd, const std::vector<Tree>& parts,
                    const std::vector<int>& offset,
                    const std::optional<Rational>& new_len) {
  if (nd.is_slot) {
    const Tree& part = parts[static_cast<size_t>(nd.label) - 1];
    int off = offset[static_cast<size_t>(nd.label) - 1];
    if (part.is_trivial()) {
      TreeNode slot;
      slot.is_slot = true;
      slot.label = off + 1;
      return slot;
    }
    TreeNode sub = part.root();
    add_slot_offset(sub, off);
    if (new_len) sub.len = new_len;
    return sub;
  }
  TreeNode out;
  out.dec = nd.dec;
  out.len = nd.len;
  for (const auto& k : nd.kids)
    out.kids.push_back(graft_node(k, parts, offset, new_len));
  return out;
}

}  // namespace

Tree graft(const Tree& base, const std::vector<Tree>& parts,
           std::optional<Rational> new_edge_len) {
  assert(static_cast<int>(parts.size()) == base.arity());
  if (base.is_trivial()) return parts[0];
  std::vector<int> offset(parts.size(), 0);
  for (size_t i = 1; i < parts.size(); ++i)
    offset[i] = offset[i - 1] + parts[i - 1].arity();
  return Tree::of(graft_node(base.root(), parts, offset, new_edge_len));
}

Tree partial_graft(const Tree& base, int i, const Tree& part,
                   std::optional<Rational> new_edge_len) {
  assert(i >= 1 && i <= base.arity());
  std::vector<Tree> parts;
  for (int k = 1; k <= base.arity(); ++k)
    parts.push_back(k == i ? part : Tree::trivial());
  return graft(base, parts, new_edge_len);
}

namespace {

void relabel_slots(TreeNode& nd, const Perm& sigma_inv) {
  if (nd.is_slot) {
    nd.label = sigma_inv(nd.label);
    return;
  }
  for (auto& k : nd.kids) relabel_slots(k, sigma_inv);
}

}  // namespace

Tree act(const Tree& t, const Perm& sigma) {
  assert(sigma.n() == t.arity());
  if (t.is_trivial()) return t;
  TreeNode root = t.root();
  relabel_slots(root, sigma.inverse());
  return Tree::of(std::move(root));
}

// ---------------------------------------------------------------------------
// Canonical form. Children are keyed slots-before-subtrees, slots by numeric
// label, subtrees by canonical code; reordering twists the decoration, and
// among reorderings realizing the sorted sequence the least decoration code
// wins. Identical subtrees are the only key ties, so the search space is the
// product of factorials of duplicate runs.
// ---------------------------------------------------------------------------

namespace {

struct ChildKey {
  int kind;  // 0 slot, 1 subtree
  int label;
  std::string code;

  bool operator<(const ChildKey& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (kind == 0) return label < o.label;
    return code < o.code;
  }
  bool operator==(const ChildKey& o) const {
    return kind == o.kind && label == o.label && code == o.code;
  }
};

TreeNode canon_node(const TreeNode& nd, const DecAction& action) {
  if (nd.is_slot) return nd;
  std::vector<TreeNode> kids;
  std::vector<ChildKey> keys;
  for (const auto& k : nd.kids) {
    TreeNode ck = canon_node(k, action);
    if (ck.is_slot)
      keys.push_back({0, ck.label, ""});
    else
      keys.push_back({1, 0, print_node(ck)});
    kids.push_back(std::move(ck));
  }

  int n = static_cast<int>(kids.size());
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return keys[static_cast<size_t>(a)] < keys[static_cast<size_t>(b)];
  });

  // Runs of equal keys in the sorted order; each run may be permuted freely.
  std::vector<std::pair<int, int>> runs;  // [start, end)
  for (int s = 0; s < n;) {
    int e = s + 1;
    while (e < n && keys[static_cast<size_t>(order[static_cast<size_t>(e)])] ==
                        keys[static_cast<size_t>(order[static_cast<size_t>(s)])])
      ++e;
    runs.emplace_back(s, e);
    s = e;
  }

  Dec best_dec = nd.dec;
  std::string best_code;
  bool have_best = false;
  std::vector<int> images(static_cast<size_t>(n));
  auto consider = [&]() {
    std::vector<int> im;
    im.reserve(static_cast<size_t>(n));
    for (int v : images) im.push_back(v + 1);
    Dec cand = action(nd.dec, Perm(std::move(im)));
    std::string code = cand.str();
    if (!have_best || code < best_code) {
      have_best = true;
      best_code = std::move(code);
      best_dec = std::move(cand);
    }
  };
  auto rec = [&](auto&& self, size_t run_idx) -> void {
    if (run_idx == runs.size()) {
      consider();
      return;
    }
    auto [s, e] = runs[run_idx];
    int k = e - s;
    for (const Perm& pi : all_perms(k)) {
      for (int j = 0; j < k; ++j)
        images[static_cast<size_t>(s + j)] =
            order[static_cast<size_t>(s + pi(j + 1) - 1)];
      self(self, run_idx + 1);
    }
  };
  rec(rec, 0);

  TreeNode out;
  out.dec = best_dec;
  out.len = nd.len;
  for (int b = 0; b < n; ++b)
    out.kids.push_back(kids[static_cast<size_t>(images[static_cast<size_t>(b)])]);
  return out;
}

}  // namespace

Tree canonical_tree(const Tree& t, const DecAction& action) {
  if (t.is_trivial()) return t;
  return Tree::of(canon_node(t.root(), action));
}

std::string canonical_code(const Tree& t, const DecAction& action) {
  return canonical_tree(t, action).str();
}

// ---------------------------------------------------------------------------
// Canonical fixed-point test. act(t, sigma) equals its own canonical form iff
// at every vertex the children already stand in canonical order (slots first
// by relabeled label, then subtrees by relabeled code), every subtree passes
// the same test, and no permutation of a run of identical subtrees twists the
// decoration to a smaller code. Checking those conditions in place, with the
// relabeling applied on the fly, skips both tree constructions, and the first
// violated comparison ends the walk. Codes are only printed at vertices with
// two or more subtree children, where the order actually needs them.
// ---------------------------------------------------------------------------

namespace {

// print_node with slot labels passed through `relabel`, appended to out.
void print_relabeled(const TreeNode& nd, const std::vector<int>& relabel,
                     std::string& out) {
  if (nd.is_slot) {
    out += '#';
    out += std::to_string(relabel[static_cast<size_t>(nd.label)]);
    return;
  }
  out += '(';
  out += nd.dec.str();
  if (nd.len) {
    out += " @";
    out += rat_str(*nd.len);
  }
  for (const auto& k : nd.kids) {
    out += ' ';
    print_relabeled(k, relabel, out);
  }
  out += ')';
}

bool node_act_canonical(const TreeNode& nd, const std::vector<int>& relabel,
                        const DecAction& action, std::string* code) {
  size_t n = nd.kids.size();
  size_t first_sub = 0;
  int prev_label = 0;
  for (; first_sub < n && nd.kids[first_sub].is_slot; ++first_sub) {
    int lab = relabel[static_cast<size_t>(nd.kids[first_sub].label)];
    if (lab <= prev_label) return false;
    prev_label = lab;
  }
  for (size_t j = first_sub; j < n; ++j)
    if (nd.kids[j].is_slot) return false;

  size_t subs = n - first_sub;
  std::vector<std::string> codes;
  if (subs >= 2) codes.reserve(subs);
  for (size_t j = first_sub; j < n; ++j) {
    std::string c;
    if (!node_act_canonical(nd.kids[j], relabel, action, subs >= 2 ? &c : nullptr))
      return false;
    if (subs >= 2) {
      if (!codes.empty() && c < codes.back()) return false;
      codes.push_back(std::move(c));
    }
  }

  // Identical subtrees may be permuted freely; the decoration must carry the
  // least code over the whole product of run permutations, mirroring the
  // search canonical_tree performs.
  if (subs >= 2) {
    std::vector<std::pair<size_t, size_t>> runs;  // [start, end) within codes
    for (size_t s = 0; s < subs;) {
      size_t e = s + 1;
      while (e < subs && codes[e] == codes[s]) ++e;
      if (e - s >= 2) runs.emplace_back(s, e);
      s = e;
    }
    if (!runs.empty()) {
      std::string dec_code = nd.dec.str();
      std::vector<int> im(n);
      for (size_t b = 0; b < n; ++b) im[b] = static_cast<int>(b) + 1;
      bool smaller = false;
      bool all_id = true;
      auto rec = [&](auto&& self, size_t ri) -> void {
        if (smaller) return;
        if (ri == runs.size()) {
          if (all_id) return;  // the untwisted decoration itself
          Dec cand = action(nd.dec, Perm(std::vector<int>(im)));
          if (cand.str() < dec_code) smaller = true;
          return;
        }
        auto [s, e] = runs[ri];
        int k = static_cast<int>(e - s);
        for (const Perm& pi : all_perms(k)) {
          bool run_id = true;
          for (int j = 0; j < k; ++j) {
            int v = static_cast<int>(first_sub + s) + pi(j + 1);
            im[first_sub + s + static_cast<size_t>(j)] = v;
            if (pi(j + 1) != j + 1) run_id = false;
          }
          bool outer_id = all_id;
          all_id = outer_id && run_id;
          self(self, ri + 1);
          all_id = outer_id;
        }
        for (size_t j = s; j < e; ++j)
          im[first_sub + j] = static_cast<int>(first_sub + j) + 1;
      };
      rec(rec, 0);
      if (smaller) return false;
    }
  }

  if (code) print_relabeled(nd, relabel, *code);
  return true;
}

}  // namespace

bool act_is_canonical(const Tree& t, const Perm& sigma, const DecAction& action) {
  assert(sigma.n() == t.arity());
  if (t.is_trivial()) return true;
  Perm inv = sigma.inverse();
  std::vector<int> relabel(static_cast<size_t>(t.arity()) + 1);
  for (int k = 1; k <= t.arity(); ++k) relabel[static_cast<size_t>(k)] = inv(k);
  return node_act_canonical(t.root(), relabel, action, nullptr);
}

// ---------------------------------------------------------------------------
// Parsing. The grammar accepts exactly what str() prints (boxes excluded):
//   TREE  := "|" | "(" DEC ["@"RAT] CHILD* ")"
//   CHILD := TREE-without-| | "#"INT
// ---------------------------------------------------------------------------

namespace {

std::optional<int> parse_uint(const std::string& s) {
  if (s.empty() || s.size() > 7) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

std::optional<int> parse_tagged(const std::string& s, const char* tag) {
  std::string t(tag);
  if (s.rfind(t, 0) != 0) return std::nullopt;
  return parse_uint(s.substr(t.size()));
}

std::optional<TreeNode> parse_node(const SExpr& e, bool is_root);

// One whole tree out of a single expression: "|" or a vertex with a full
// label set {1..n}.
std::optional<Tree> tree_from_expr(const SExpr& e) {
  if (e.is_atom)
    return e.atom == "|" ? std::optional<Tree>(Tree::trivial()) : std::nullopt;
  auto root = parse_node(e, true);
  if (!root) return std::nullopt;
  std::vector<int> labels;
  collect_slot_labels(*root, labels);
  std::sort(labels.begin(), labels.end());
  for (size_t k = 0; k < labels.size(); ++k)
    if (labels[k] != static_cast<int>(k) + 1) return std::nullopt;
  return Tree::of(std::move(*root));
}

// Parenthesized decorations: "(dg ...)" dual graphs and "(box INST ELEM)"
// opaque elements of another instance.
bool parse_block_dec(const SExpr& block, Dec& dec, int& declared_arity) {
  if (block.items.empty() || !block.items[0].is_atom) return false;
  if (block.items[0].atom == "dg") {
    auto g = DualGraph::parse(block);
    if (!g) return false;
    declared_arity = g->arity();
    dec = Dec::dual_graph(std::move(*g));
    return true;
  }
  if (block.items[0].atom == "box") {
    if (block.items.size() != 3 || !block.items[1].is_atom) return false;
    auto inner = tree_from_expr(block.items[2]);
    if (!inner) return false;
    declared_arity = inner->arity();
    std::string code = inner->str();
    dec = Dec::box(block.items[1].atom, std::make_shared<const Tree>(*inner),
                   std::move(code), inner->arity());
    return true;
  }
  return false;
}

std::optional<TreeNode> parse_node(const SExpr& e, bool is_root) {
  if (e.is_atom || e.items.empty()) return std::nullopt;
  const std::string& head = e.items[0].atom;  // empty for parenthesized decorations
  size_t i = 1;
  Dec dec;
  int declared_arity = -1;
  if (!e.items[0].is_atom) {
    if (!parse_block_dec(e.items[0], dec, declared_arity)) return std::nullopt;
  } else if (head == "_") {
    dec = Dec::unit(1);  // arity fixed up from the child count below
  } else if (head == "sym") {
    if (e.items.size() < 3 || !e.items[1].is_atom || !e.items[2].is_atom)
      return std::nullopt;
    auto n = parse_tagged(e.items[2].atom, "n=");
    if (!n) return std::nullopt;
    dec = Dec::sym(e.items[1].atom, *n);
    declared_arity = *n;
    i = 3;
  } else if (head == "fr") {
    if (e.items.size() < 3 || !e.items[1].is_atom || !e.items[2].is_atom)
      return std::nullopt;
    auto g = parse_tagged(e.items[1].atom, "g=");
    auto m = parse_tagged(e.items[2].atom, "m=");
    if (!g || !m || *m < 1 || (*g == 0 && *m == 1)) return std::nullopt;
    dec = Dec::surface(SurfaceDec::smooth(*g, *m));
    declared_arity = *m;
    i = 3;
  } else if (head == "ann") {
    if (e.items.size() < 2 || !e.items[1].is_atom) return std::nullopt;
    if (e.items[1].atom == "inf") {
      // Input alias for the infinite-modulus annulus; prints as "nod".
      dec = Dec::modulus(Modulus::infinite());
    } else {
      auto q = rat_parse(e.items[1].atom);
      if (!q || *q < Rational(0)) return std::nullopt;
      dec = Dec::surface(SurfaceDec::annulus(*q));
    }
    declared_arity = 1;
    i = 2;
  } else if (head == "nod") {
    Modulus m = Modulus::infinite();
    if (e.items.size() >= 2 && e.items[1].is_atom) {
      auto q = rat_parse(e.items[1].atom);
      if (q) {
        if (*q < Rational(0)) return std::nullopt;
        m = Modulus::finite(*q);
        i = 2;
      }
    }
    dec = Dec::modulus(m);
    declared_arity = 1;
  } else {
    return std::nullopt;
  }

  TreeNode nd;
  if (i < e.items.size() && e.items[i].is_atom && e.items[i].atom.size() > 1 &&
      e.items[i].atom[0] == '@') {
    if (is_root) return std::nullopt;
    auto l = rat_parse(std::string_view(e.items[i].atom).substr(1));
    if (!l || *l < Rational(0) || *l > Rational(1)) return std::nullopt;
    nd.len = *l;
    ++i;
  }

  for (; i < e.items.size(); ++i) {
    const SExpr& c = e.items[i];
    if (c.is_atom) {
      if (c.atom.size() < 2 || c.atom[0] != '#') return std::nullopt;
      auto l = parse_uint(c.atom.substr(1));
      if (!l || *l < 1) return std::nullopt;
      TreeNode slot;
      slot.is_slot = true;
      slot.label = *l;
      nd.kids.push_back(slot);
    } else {
      auto sub = parse_node(c, false);
      if (!sub) return std::nullopt;
      nd.kids.push_back(std::move(*sub));
    }
  }

  int arity = static_cast<int>(nd.kids.size());
  if (declared_arity >= 0 && arity != declared_arity) return std::nullopt;
  if (declared_arity < 0) dec.n = arity;  // "_" takes its arity from the children
  nd.dec = std::move(dec);
  return nd;
}

}  // namespace

std::optional<Tree> Tree::parse(std::string_view text) {
  // Trim outer whitespace; the s-expression reader handles the rest.
  size_t b = text.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return std::nullopt;
  size_t e = text.find_last_not_of(" \t\r\n");
  std::string_view body = text.substr(b, e - b + 1);

  auto expr = sexp_parse(body);
  if (std::holds_alternative<ParseError>(expr)) return std::nullopt;
  return tree_from_expr(std::get<SExpr>(expr));
}

}  // namespace oforge
