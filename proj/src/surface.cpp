#include "oforge/surface.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace oforge {

// ---------------------------------------------------------------------------
// Modulus
// ---------------------------------------------------------------------------

Modulus Modulus::finite(const Rational& q) {
  assert(q >= Rational(0));
  Modulus m;
  m.q_ = q;
  return m;
}

Modulus Modulus::operator+(const Modulus& o) const {
  if (inf_ || o.inf_) return infinite();
  return finite(q_ + o.q_);
}

bool Modulus::operator==(const Modulus& o) const {
  if (inf_ != o.inf_) return false;
  return inf_ || q_ == o.q_;
}

bool Modulus::operator<(const Modulus& o) const {
  if (inf_) return false;
  if (o.inf_) return true;
  return q_ < o.q_;
}

std::string Modulus::str() const { return inf_ ? "inf" : rat_str(q_); }

std::optional<Modulus> Modulus::parse(std::string_view s) {
  if (s == "inf") return infinite();
  auto q = rat_parse(s);
  if (!q || *q < Rational(0)) return std::nullopt;
  return finite(*q);
}

// ---------------------------------------------------------------------------
// SurfaceDec
// ---------------------------------------------------------------------------

SurfaceDec SurfaceDec::smooth(int genus, int inputs) {
  assert(genus >= 0 && inputs >= 1);
  assert(!(genus == 0 && inputs == 1));  // that piece is an annulus
  SurfaceDec d;
  d.kind_ = Kind::Smooth;
  d.genus_ = genus;
  d.inputs_ = inputs;
  return d;
}

SurfaceDec SurfaceDec::annulus(const Rational& q) {
  assert(q >= Rational(0));
  SurfaceDec d;
  d.kind_ = Kind::Annulus;
  d.modulus_ = q;
  return d;
}

SurfaceDec SurfaceDec::nodal() {
  SurfaceDec d;
  d.kind_ = Kind::Nodal;
  return d;
}

bool SurfaceDec::operator==(const SurfaceDec& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Smooth: return genus_ == o.genus_ && inputs_ == o.inputs_;
    case Kind::Annulus: return modulus_ == o.modulus_;
    case Kind::Nodal: return true;
  }
  return false;
}

bool SurfaceDec::operator<(const SurfaceDec& o) const {
  if (kind_ != o.kind_) return kind_ < o.kind_;
  switch (kind_) {
    case Kind::Smooth:
      return genus_ != o.genus_ ? genus_ < o.genus_ : inputs_ < o.inputs_;
    case Kind::Annulus: return modulus_ < o.modulus_;
    case Kind::Nodal: return false;
  }
  return false;
}

std::string SurfaceDec::str() const {
  switch (kind_) {
    case Kind::Smooth:
      return "fr g=" + std::to_string(genus_) + " m=" + std::to_string(inputs_);
    case Kind::Annulus: return "ann " + rat_str(modulus_);
    case Kind::Nodal: return "nod";
  }
  return "";
}

SurfaceDec fr_compose(const SurfaceDec& base, const std::vector<SurfaceDec>& parts) {
  assert(static_cast<int>(parts.size()) == base.arity());
  // Chains of annuli compose by adding moduli; any smooth piece in the
  // gluing absorbs every annulus and all nodes smooth out... except they
  // do not: a node survives gluing. Track all three ingredients.
  int genus = base.genus() * (base.kind() == SurfaceDec::Kind::Smooth ? 1 : 0);
  int circles = 0;        // input circles of the composite
  bool any_smooth = base.kind() == SurfaceDec::Kind::Smooth;
  bool any_nodal = base.kind() == SurfaceDec::Kind::Nodal;
  Rational mod_sum = base.kind() == SurfaceDec::Kind::Annulus ? base.modulus() : Rational(0);
  for (const auto& p : parts) {
    switch (p.kind()) {
      case SurfaceDec::Kind::Smooth:
        any_smooth = true;
        genus += p.genus();
        circles += p.inputs();
        break;
      case SurfaceDec::Kind::Annulus:
        mod_sum += p.modulus();
        circles += 1;
        break;
      case SurfaceDec::Kind::Nodal:
        any_nodal = true;
        circles += 1;
        break;
    }
  }
  if (any_nodal) {
    // The composite is not a single smooth piece, so it has no SurfaceDec.
    // Callers composing nodal pieces must work in the dual-graph model.
    throw std::logic_error("fr_compose: nodal pieces require nodfr_compose");
  }
  if (!any_smooth) return SurfaceDec::annulus(mod_sum);
  if (genus == 0 && circles == 1) {
    // A smooth genus-0 one-input composite only arises from gluing annuli
    // into annuli, which the branch above already handled.
    throw std::logic_error("fr_compose: produced a disallowed (0,1) piece");
  }
  return SurfaceDec::smooth(genus, circles);
}

// ---------------------------------------------------------------------------
// CompNode helpers
// ---------------------------------------------------------------------------

bool CompNode::operator==(const CompNode& o) const {
  return genus == o.genus && inputs == o.inputs && children == o.children;
}

namespace {

// Deterministic total order key; injective on canonically ordered subtrees.
std::string comp_key(const CompNode& c) {
  std::string s = "(" + std::to_string(c.genus) + ";";
  for (int l : c.inputs) s += std::to_string(l) + ",";
  s += ";";
  for (const auto& k : c.children) s += comp_key(k);
  s += ")";
  return s;
}

void canonize_comp(CompNode& c) {
  std::sort(c.inputs.begin(), c.inputs.end());
  for (auto& k : c.children) canonize_comp(k);
  std::stable_sort(c.children.begin(), c.children.end(),
                   [](const CompNode& a, const CompNode& b) {
                     return comp_key(a) < comp_key(b);
                   });
}

void collect_labels(const CompNode& c, std::vector<int>& out) {
  out.insert(out.end(), c.inputs.begin(), c.inputs.end());
  for (const auto& k : c.children) collect_labels(k, out);
}

bool labels_are_1_to_n(const CompNode& root) {
  std::vector<int> ls;
  collect_labels(root, ls);
  std::sort(ls.begin(), ls.end());
  for (size_t i = 0; i < ls.size(); ++i)
    if (ls[i] != static_cast<int>(i) + 1) return false;
  return true;
}

int count_comps(const CompNode& c) {
  int n = 1;
  for (const auto& k : c.children) n += count_comps(k);
  return n;
}

int count_inputs(const CompNode& c) {
  int n = static_cast<int>(c.inputs.size());
  for (const auto& k : c.children) n += count_inputs(k);
  return n;
}

int sum_genus(const CompNode& c) {
  int g = c.genus;
  for (const auto& k : c.children) g += sum_genus(k);
  return g;
}

bool every_comp_decomposable(const CompNode& c) {
  if (c.inputs.empty() && c.children.empty()) return false;
  for (const auto& k : c.children)
    if (!every_comp_decomposable(k)) return false;
  return true;
}

// Interior components live below the root and carry no boundary circles.
bool interiors_stable(const CompNode& c, bool is_root) {
  if (!is_root && c.inputs.empty()) {
    int deg = static_cast<int>(c.children.size()) + 1;
    if (2 * c.genus - 2 + deg <= 0) return false;
  }
  for (const auto& k : c.children)
    if (!interiors_stable(k, false)) return false;
  return true;
}

CompNode stabilize_comp(const CompNode& c) {
  CompNode out;
  out.genus = c.genus;
  out.inputs = c.inputs;
  for (const auto& child : c.children) {
    CompNode k = stabilize_comp(child);
    if (k.genus == 0 && k.inputs.empty()) {
      if (k.children.empty()) continue;  // sphere meeting one node: erase
      if (k.children.size() == 1) {      // sphere between two nodes: merge them
        out.children.push_back(std::move(k.children[0]));
        continue;
      }
    }
    out.children.push_back(std::move(k));
  }
  return out;
}

void add_label_offset(CompNode& c, int off) {
  for (int& l : c.inputs) l += off;
  for (auto& k : c.children) add_label_offset(k, off);
}

void apply_relabel(CompNode& c, const Perm& sigma_inv) {
  for (int& l : c.inputs) l = sigma_inv(l);
  for (auto& k : c.children) apply_relabel(k, sigma_inv);
}

bool is_bare_annulus_shape(const CompNode& root) {
  return root.genus == 0 && root.inputs.size() == 1 && root.children.empty();
}

}  // namespace

// ---------------------------------------------------------------------------
// DualGraph
// ---------------------------------------------------------------------------

DualGraph DualGraph::annulus(const Modulus& m) {
  if (m.is_infinite()) {
    // The nodal annulus is a genuine two-component graph: an output disc and
    // an input disc joined at the node.
    CompNode in_disc;
    in_disc.inputs = {1};
    CompNode root;
    root.children.push_back(in_disc);
    return of(std::move(root));
  }
  DualGraph g;
  g.ann_ = m;
  return g;
}

DualGraph DualGraph::of(CompNode root) {
  canonize_comp(root);
  assert(labels_are_1_to_n(root));
  assert(!is_bare_annulus_shape(root));  // finite annuli use the chain form
  DualGraph g;
  g.root_ = std::move(root);
  return g;
}

int DualGraph::arity() const { return ann_ ? 1 : count_inputs(*root_); }

int DualGraph::total_genus() const { return ann_ ? 0 : sum_genus(*root_); }

int DualGraph::node_count() const { return ann_ ? 0 : count_comps(*root_) - 1; }

int DualGraph::component_count() const { return ann_ ? 1 : count_comps(*root_); }

bool DualGraph::decomposable() const {
  return ann_ ? true : every_comp_decomposable(*root_);
}

bool DualGraph::is_stable() const {
  return ann_ ? true : interiors_stable(*root_, true);
}

DualGraph DualGraph::relabel(const Perm& sigma) const {
  assert(sigma.n() == arity());
  if (ann_) return *this;
  CompNode r = *root_;
  apply_relabel(r, sigma.inverse());
  return of(std::move(r));
}

bool DualGraph::operator==(const DualGraph& o) const {
  if (static_cast<bool>(ann_) != static_cast<bool>(o.ann_)) return false;
  if (ann_) return *ann_ == *o.ann_;
  return *root_ == *o.root_;
}

DualGraph stabilize(const DualGraph& g) {
  if (g.is_annulus_chain()) return g;
  return DualGraph::of(stabilize_comp(g.root()));
}

DualGraph nodfr_compose(const DualGraph& base, const std::vector<DualGraph>& parts) {
  assert(static_cast<int>(parts.size()) == base.arity());
  if (base.is_annulus_chain()) {
    const DualGraph& p = parts[0];
    if (p.is_annulus_chain())
      return DualGraph::annulus(base.annulus_modulus() + p.annulus_modulus());
    return p;  // annulus glued onto the output circle is absorbed
  }

  std::vector<int> offset(parts.size() + 1, 0);
  for (size_t i = 0; i < parts.size(); ++i)
    offset[i + 1] = offset[i] + parts[i].arity();

  // Rebuild the component tree, replacing each input circle by the
  // relabeled part: annulus chains keep the circle, trees merge their root
  // component into the host component.
  auto glue = [&](auto&& self, const CompNode& c) -> CompNode {
    CompNode out;
    out.genus = c.genus;
    for (const auto& child : c.children) out.children.push_back(self(self, child));
    for (int label : c.inputs) {
      const DualGraph& p = parts[static_cast<size_t>(label) - 1];
      int off = offset[static_cast<size_t>(label) - 1];
      if (p.is_annulus_chain()) {
        out.inputs.push_back(off + 1);
        continue;
      }
      CompNode pr = p.root();
      add_label_offset(pr, off);
      out.genus += pr.genus;
      out.inputs.insert(out.inputs.end(), pr.inputs.begin(), pr.inputs.end());
      for (auto& k : pr.children) out.children.push_back(std::move(k));
    }
    return out;
  };
  return DualGraph::of(stabilize_comp(glue(glue, base.root())));
}

DualGraph graph_of_surface(const SurfaceDec& d) {
  switch (d.kind()) {
    case SurfaceDec::Kind::Smooth: {
      CompNode root;
      root.genus = d.genus();
      for (int i = 1; i <= d.inputs(); ++i) root.inputs.push_back(i);
      return DualGraph::of(std::move(root));
    }
    case SurfaceDec::Kind::Annulus:
      return DualGraph::annulus(Modulus::finite(d.modulus()));
    case SurfaceDec::Kind::Nodal: return DualGraph::annulus(Modulus::infinite());
  }
  return DualGraph::annulus(Modulus::finite(Rational(0)));
}

DualGraph graph_of_modulus(const Modulus& m) { return DualGraph::annulus(m); }

// ---------------------------------------------------------------------------
// Serialization. The canonical text form lists components in preorder; node
// ids number the tree edges in the same traversal. Example:
//   (dg (comp g=0 (in 2) (out) (node 1)) (comp g=1 (in 1) (node 1)))
// ---------------------------------------------------------------------------

namespace {

void print_comps(const CompNode& c, bool is_root, int parent_id, int& next_id,
                 std::vector<std::string>& out) {
  std::string s = "(comp g=" + std::to_string(c.genus);
  if (!c.inputs.empty()) {
    s += " (in";
    for (int l : c.inputs) s += " " + std::to_string(l);
    s += ")";
  }
  if (is_root) s += " (out)";
  if (!is_root) s += " (node " + std::to_string(parent_id) + ")";
  std::vector<int> child_ids;
  for (size_t i = 0; i < c.children.size(); ++i) {
    child_ids.push_back(next_id++);
    s += " (node " + std::to_string(child_ids.back()) + ")";
  }
  s += ")";
  out.push_back(std::move(s));
  for (size_t i = 0; i < c.children.size(); ++i)
    print_comps(c.children[i], false, child_ids[i], next_id, out);
}

std::string print_graph_body(const CompNode& root) {
  std::vector<std::string> comps;
  int next_id = 1;
  print_comps(root, true, 0, next_id, comps);
  std::string s;
  for (const auto& c : comps) s += " " + c;
  return s;
}

struct RawComp {
  int genus = 0;
  std::vector<int> inputs;
  bool out = false;
  std::vector<int> nodes;
};

std::optional<int> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t i = 0;
  long v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    v = v * 10 + (s[i] - '0');
    if (v > 1000000) return std::nullopt;
  }
  return static_cast<int>(v);
}

std::optional<RawComp> parse_raw_comp(const SExpr& e) {
  if (e.is_atom || e.items.empty() || !e.items[0].is_atom || e.items[0].atom != "comp")
    return std::nullopt;
  RawComp rc;
  size_t i = 1;
  if (i >= e.items.size() || !e.items[i].is_atom ||
      e.items[i].atom.rfind("g=", 0) != 0)
    return std::nullopt;
  auto g = parse_int(e.items[i].atom.substr(2));
  if (!g) return std::nullopt;
  rc.genus = *g;
  ++i;
  if (i < e.items.size() && !e.items[i].is_atom && !e.items[i].items.empty() &&
      e.items[i].items[0].is_atom && e.items[i].items[0].atom == "in") {
    for (size_t k = 1; k < e.items[i].items.size(); ++k) {
      if (!e.items[i].items[k].is_atom) return std::nullopt;
      auto l = parse_int(e.items[i].items[k].atom);
      if (!l || *l < 1) return std::nullopt;
      rc.inputs.push_back(*l);
    }
    if (rc.inputs.empty()) return std::nullopt;
    ++i;
  }
  if (i < e.items.size() && !e.items[i].is_atom && e.items[i].items.size() == 1 &&
      e.items[i].items[0].is_atom && e.items[i].items[0].atom == "out") {
    rc.out = true;
    ++i;
  }
  for (; i < e.items.size(); ++i) {
    const SExpr& n = e.items[i];
    if (n.is_atom || n.items.size() != 2 || !n.items[0].is_atom ||
        n.items[0].atom != "node" || !n.items[1].is_atom)
      return std::nullopt;
    auto id = parse_int(n.items[1].atom);
    if (!id) return std::nullopt;
    rc.nodes.push_back(*id);
  }
  return rc;
}

// Orients a validated list of components into a tree rooted at the unique
// output component. Returns nullopt on multiplicity, cycle, or disconnection.
std::optional<CompNode> assemble_comp_tree(const std::vector<RawComp>& comps) {
  int root_idx = -1;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].out) {
      if (root_idx >= 0) return std::nullopt;
      root_idx = static_cast<int>(i);
    }
  }
  if (root_idx < 0) return std::nullopt;

  std::map<int, std::vector<int>> ends;  // node id -> incident comp indices
  for (size_t i = 0; i < comps.size(); ++i)
    for (int id : comps[i].nodes) ends[id].push_back(static_cast<int>(i));
  for (const auto& [id, cs] : ends) {
    if (cs.size() != 2 || cs[0] == cs[1]) return std::nullopt;
  }

  std::vector<bool> seen(comps.size(), false);
  auto build = [&](auto&& self, int idx, int from_id) -> std::optional<CompNode> {
    if (seen[static_cast<size_t>(idx)]) return std::nullopt;
    seen[static_cast<size_t>(idx)] = true;
    CompNode c;
    c.genus = comps[static_cast<size_t>(idx)].genus;
    c.inputs = comps[static_cast<size_t>(idx)].inputs;
    for (int id : comps[static_cast<size_t>(idx)].nodes) {
      if (id == from_id) continue;
      const auto& cs = ends[id];
      int other = cs[0] == idx ? cs[1] : cs[0];
      auto child = self(self, other, id);
      if (!child) return std::nullopt;
      c.children.push_back(std::move(*child));
    }
    return c;
  };
  auto root = build(build, root_idx, -1);
  if (!root) return std::nullopt;
  for (bool s : seen)
    if (!s) return std::nullopt;
  return root;
}

}  // namespace

std::string DualGraph::str() const {
  if (ann_) return "(dg (ann " + ann_->str() + "))";
  return "(dg" + print_graph_body(*root_) + ")";
}

std::optional<DualGraph> DualGraph::parse(const SExpr& e) {
  if (e.is_atom || e.items.empty() || !e.items[0].is_atom || e.items[0].atom != "dg")
    return std::nullopt;
  if (e.items.size() == 2 && !e.items[1].is_atom && e.items[1].items.size() == 2 &&
      e.items[1].items[0].is_atom && e.items[1].items[0].atom == "ann" &&
      e.items[1].items[1].is_atom) {
    auto m = Modulus::parse(e.items[1].items[1].atom);
    if (!m) return std::nullopt;
    return annulus(*m);
  }
  std::vector<RawComp> comps;
  for (size_t i = 1; i < e.items.size(); ++i) {
    auto rc = parse_raw_comp(e.items[i]);
    if (!rc) return std::nullopt;
    comps.push_back(std::move(*rc));
  }
  if (comps.empty()) return std::nullopt;
  auto root = assemble_comp_tree(comps);
  if (!root) return std::nullopt;
  if (!labels_are_1_to_n(*root)) return std::nullopt;
  if (is_bare_annulus_shape(*root)) return std::nullopt;
  return of(std::move(*root));
}

// ---------------------------------------------------------------------------
// MarkedSkeleton
// ---------------------------------------------------------------------------

MarkedSkeleton MarkedSkeleton::of(CompNode root) {
  canonize_comp(root);
  assert(labels_are_1_to_n(root));
  MarkedSkeleton s;
  s.root_ = std::move(root);
  return s;
}

int MarkedSkeleton::arity() const { return count_inputs(root_); }

int MarkedSkeleton::total_genus() const { return sum_genus(root_); }

namespace {

bool marked_stable_rec(const CompNode& c, bool is_root) {
  int special = static_cast<int>(c.inputs.size()) +
                static_cast<int>(c.children.size()) + 1;  // +1: output or parent
  if (2 * c.genus - 2 + special <= 0) return false;
  for (const auto& k : c.children)
    if (!marked_stable_rec(k, false)) return false;
  (void)is_root;
  return true;
}

}  // namespace

bool MarkedSkeleton::is_stable() const { return marked_stable_rec(root_, true); }

std::string MarkedSkeleton::str() const {
  return "(mk" + print_graph_body(root_) + ")";
}

std::optional<MarkedSkeleton> MarkedSkeleton::parse(const SExpr& e) {
  if (e.is_atom || e.items.empty() || !e.items[0].is_atom || e.items[0].atom != "mk")
    return std::nullopt;
  std::vector<RawComp> comps;
  for (size_t i = 1; i < e.items.size(); ++i) {
    auto rc = parse_raw_comp(e.items[i]);
    if (!rc) return std::nullopt;
    comps.push_back(std::move(*rc));
  }
  if (comps.empty()) return std::nullopt;
  auto root = assemble_comp_tree(comps);
  if (!root) return std::nullopt;
  if (!labels_are_1_to_n(*root)) return std::nullopt;
  return of(std::move(*root));
}

std::optional<DualGraph> fr_map(const MarkedSkeleton& s) {
  if (!s.is_stable()) return std::nullopt;
  if (s.root().genus == 0 && s.root().inputs.size() == 1 && s.root().children.empty())
    return std::nullopt;  // twice-marked sphere: no framed counterpart
  return DualGraph::of(s.root());
}

// ---------------------------------------------------------------------------
// cap_map. Work on a flat edge list so contractions can strip the root and
// promote a neighbor without tree surgery.
// ---------------------------------------------------------------------------

namespace {

struct FlatCurve {
  struct Comp {
    int genus = 0;
    std::vector<int> marks;
    bool out = false;
    bool alive = true;
  };
  std::vector<Comp> comps;
  std::vector<std::pair<int, int>> edges;  // indices into comps

  std::vector<int> neighbors(int i) const {
    std::vector<int> ns;
    for (const auto& [a, b] : edges) {
      if (a == i) ns.push_back(b);
      if (b == i) ns.push_back(a);
    }
    return ns;
  }
  void drop_edges_at(int i) {
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [&](const auto& e) { return e.first == i || e.second == i; }),
                edges.end());
  }
};

void flatten_curve(const CompNode& c, bool is_root, int parent, FlatCurve& fc) {
  FlatCurve::Comp comp;
  comp.genus = c.genus;
  comp.marks = c.inputs;
  comp.out = is_root;
  int idx = static_cast<int>(fc.comps.size());
  fc.comps.push_back(comp);
  if (parent >= 0) fc.edges.emplace_back(parent, idx);
  for (const auto& k : c.children) flatten_curve(k, false, idx, fc);
}

// Contractions preserve tree-ness, so orienting away from the root cannot
// revisit a component.
CompNode rebuild_curve(const FlatCurve& fc, int idx, int from) {
  CompNode c;
  c.genus = fc.comps[static_cast<size_t>(idx)].genus;
  c.inputs = fc.comps[static_cast<size_t>(idx)].marks;
  for (const auto& [a, b] : fc.edges) {
    int other = a == idx ? b : (b == idx ? a : -1);
    if (other < 0 || other == from) continue;
    c.children.push_back(rebuild_curve(fc, other, idx));
  }
  return c;
}

}  // namespace

CapResult cap_map(const DualGraph& g) {
  if (g.is_annulus_chain()) return {std::nullopt, true};

  FlatCurve fc;
  flatten_curve(g.root(), true, -1, fc);

  // Contract unstable components one at a time. Marks and the output of a
  // contracted sphere migrate onto the node it met its neighbor at.
  for (;;) {
    int victim = -1, deg = 0;
    for (size_t i = 0; i < fc.comps.size(); ++i) {
      if (!fc.comps[i].alive) continue;
      int d = static_cast<int>(fc.neighbors(static_cast<int>(i)).size());
      int special = static_cast<int>(fc.comps[i].marks.size()) +
                    (fc.comps[i].out ? 1 : 0) + d;
      if (2 * fc.comps[i].genus - 2 + special <= 0) {
        victim = static_cast<int>(i);
        deg = d;
        break;
      }
    }
    if (victim < 0) break;
    auto& v = fc.comps[static_cast<size_t>(victim)];
    if (deg == 0) return {std::nullopt, true};  // nothing left to absorb it
    if (deg == 2 && v.marks.empty() && !v.out) {
      auto ns = fc.neighbors(victim);
      fc.drop_edges_at(victim);
      fc.edges.emplace_back(ns[0], ns[1]);
      v.alive = false;
      continue;
    }
    if (deg == 1) {
      int n = fc.neighbors(victim)[0];
      auto& target = fc.comps[static_cast<size_t>(n)];
      target.marks.insert(target.marks.end(), v.marks.begin(), v.marks.end());
      if (v.out) target.out = true;
      fc.drop_edges_at(victim);
      v.alive = false;
      continue;
    }
    // Unstable genus-0 components have at most two special points, so the
    // two branches above are exhaustive.
    assert(false && "cap_map: unexpected unstable shape");
    return {std::nullopt, true};
  }

  int root_idx = -1;
  for (size_t i = 0; i < fc.comps.size(); ++i)
    if (fc.comps[i].alive && fc.comps[i].out) root_idx = static_cast<int>(i);
  assert(root_idx >= 0);
  return {MarkedSkeleton::of(rebuild_curve(fc, root_idx, -1)), false};
}

}  // namespace oforge
