#include "oforge/instances.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>

#include "oforge/enumerate.hpp"

namespace oforge {

namespace {

bool perm_is_odd(const Perm& s) {
  int inv = 0;
  for (int a = 1; a <= s.n(); ++a)
    for (int b = a + 1; b <= s.n(); ++b)
      if (s(a) > s(b)) ++inv;
  return inv % 2 == 1;
}

void sort_by_code(std::vector<Tree>& v) {
  std::sort(v.begin(), v.end(),
            [](const Tree& x, const Tree& y) { return x.str() < y.str(); });
}

// Composition for instances whose elements are single corollas. The result
// needs no canonicalization: a corolla with identity slot labels already is
// canonical, and the decoration composites are canonical by construction.
Tree compose_base(const Tree& u, const std::vector<Tree>& parts) {
  if (u.is_trivial()) {
    assert(parts.size() == 1);
    return parts[0];
  }
  assert(u.vertex_count() == 1);
  std::vector<std::optional<Dec>> decs;
  decs.reserve(parts.size());
  for (const Tree& p : parts) {
    if (p.is_trivial()) {
      decs.emplace_back(std::nullopt);
    } else {
      assert(p.vertex_count() == 1);
      decs.emplace_back(p.root().dec);
    }
  }
  return Tree::corolla(compose_decs(u.root().dec, decs));
}

using DomainWithBounds = std::function<std::vector<Dec>(int, const Bounds&)>;

std::function<std::vector<Tree>(int, const Bounds&)> corolla_elements(
    DomainWithBounds domain) {
  return [domain = std::move(domain)](int n, const Bounds& b) {
    std::vector<Tree> out;
    if (n == 1) out.push_back(Tree::trivial());
    for (const Dec& d : domain(n, b)) out.push_back(Tree::corolla(d));
    sort_by_code(out);
    return out;
  };
}

OperadInstance base_instance(std::string name, DomainWithBounds domain,
                             DecAction act) {
  OperadInstance o;
  o.name = name;
  o.collection.name = std::move(name);
  o.collection.domain = domain;
  o.collection.act = std::move(act);
  o.compose = compose_base;
  o.elements = corolla_elements(std::move(domain));
  o.corolla_decs = true;
  return o;
}

OperadInstance free_instance(std::string name, DomainWithBounds domain,
                             DecAction act) {
  OperadInstance o;
  o.name = std::move(name);
  o.collection.name = o.name;
  o.collection.domain = std::move(domain);
  o.collection.act = act;
  o.compose = [act](const Tree& u, const std::vector<Tree>& ps) {
    return canonical_tree(graft(u, ps), act);
  };
  o.elements = [domain = o.collection.domain, act](int n, const Bounds& b) {
    DomainFn dom = [&domain, &b](int k) { return domain(k, b); };
    return enumerate_elements(n, b.max_vertices, b.max_genus, dom, b.max_arity,
                              act, /*include_trivial=*/true);
  };
  return o;
}

}  // namespace

Dec standard_dec_act(const Dec& d, const Perm& sigma) {
  switch (d.kind) {
    case Dec::Kind::Graph:
      return Dec::dual_graph(d.graph->relabel(sigma));
    case Dec::Kind::Sym:
      if ((d.name == "a" || d.name == "b") && perm_is_odd(sigma))
        return Dec::sym(d.name == "a" ? "b" : "a", d.n);
      return d;
    default:
      return d;  // unit, modulus and surface decorations are symmetric
  }
}

Dec compose_decs(const Dec& base, const std::vector<std::optional<Dec>>& parts) {
  switch (base.kind) {
    case Dec::Kind::Srf: {
      std::vector<SurfaceDec> ps;
      ps.reserve(parts.size());
      for (const auto& p : parts) {
        if (!p) {
          ps.push_back(SurfaceDec::annulus(Rational(0)));
        } else if (p->kind == Dec::Kind::Srf) {
          ps.push_back(p->srf);
        } else {
          throw std::logic_error("compose_decs: surface base takes surface parts");
        }
      }
      return Dec::surface(fr_compose(base.srf, ps));
    }
    case Dec::Kind::Mod: {
      if (parts.size() != 1)
        throw std::logic_error("compose_decs: modulus base is unary");
      Modulus m = base.mod;
      if (parts[0]) {
        if (parts[0]->kind != Dec::Kind::Mod)
          throw std::logic_error("compose_decs: modulus base takes modulus parts");
        m = m + parts[0]->mod;
      }
      return Dec::modulus(m);
    }
    case Dec::Kind::Graph: {
      std::vector<DualGraph> ps;
      ps.reserve(parts.size());
      for (const auto& p : parts) {
        if (!p) {
          ps.push_back(DualGraph::annulus(Modulus::finite(Rational(0))));
        } else if (p->kind == Dec::Kind::Graph) {
          ps.push_back(*p->graph);
        } else {
          throw std::logic_error("compose_decs: graph base takes graph parts");
        }
      }
      return Dec::dual_graph(nodfr_compose(*base.graph, ps));
    }
    default:
      throw std::logic_error("compose_decs: decoration has no composition");
  }
}

OperadInstance tree_operad() {
  return free_instance(
      "tree",
      [](int n, const Bounds&) { return std::vector<Dec>{Dec::unit(n)}; },
      trivial_dec_action);
}

OperadInstance free_x2() {
  return free_instance(
      "free2",
      [](int n, const Bounds&) {
        std::vector<Dec> out;
        if (n == 2) {
          out.push_back(Dec::sym("a", 2));
          out.push_back(Dec::sym("b", 2));
        }
        return out;
      },
      standard_dec_act);
}

OperadInstance ann_disc() {
  return base_instance(
      "ann",
      [](int n, const Bounds& b) {
        std::vector<Dec> out;
        if (n == 1)
          for (const Rational& q : b.modulus_grid)
            out.push_back(Dec::surface(SurfaceDec::annulus(q)));
        return out;
      },
      trivial_dec_action);
}

OperadInstance fr_disc() {
  return base_instance(
      "fr",
      [](int n, const Bounds& b) {
        std::vector<Dec> out;
        if (n < 1) return out;
        if (n == 1)
          for (const Rational& q : b.modulus_grid)
            out.push_back(Dec::surface(SurfaceDec::annulus(q)));
        for (int g = (n == 1 ? 1 : 0); g <= b.max_genus; ++g)
          out.push_back(Dec::surface(SurfaceDec::smooth(g, n)));
        return out;
      },
      trivial_dec_action);
}

OperadInstance nodann_disc() {
  return base_instance(
      "nodann",
      [](int n, const Bounds& b) {
        std::vector<Dec> out;
        if (n == 1) {
          for (const Rational& q : b.modulus_grid)
            out.push_back(Dec::modulus(Modulus::finite(q)));
          out.push_back(Dec::modulus(Modulus::infinite()));
        }
        return out;
      },
      trivial_dec_action);
}

OperadInstance nodfr_disc() {
  return base_instance(
      "nodfr",
      [](int n, const Bounds& b) {
        std::vector<Dec> out;
        if (n < 1) return out;
        GraphEnumOpts o;
        o.arity = n;
        o.max_total_genus = b.max_genus;
        o.max_comps = b.max_vertices;
        o.max_dec_size = b.max_vertices;
        o.require_decomposable = true;
        o.include_pure_annuli = true;
        o.annulus_grid = b.modulus_grid;
        for (DualGraph& g : enumerate_dual_graphs(o))
          out.push_back(Dec::dual_graph(std::move(g)));
        return out;
      },
      standard_dec_act);
}

DecAction w_dec_action(const OperadInstance& base) {
  if (base.corolla_decs) return base.collection.act;
  OperadInstance inner = base;
  return [inner](const Dec& d, const Perm& s) -> Dec {
    if (d.kind == Dec::Kind::Box) {
      Tree moved = inner.act_on(*d.box_tree, s);
      std::string code = moved.str();
      int n = d.n;
      return Dec::box(d.box_inst, std::make_shared<const Tree>(std::move(moved)),
                      std::move(code), n);
    }
    return inner.collection.act(d, s);
  };
}

DualGraph erase_seams(const Tree& t) {
  if (t.is_trivial())
    throw std::invalid_argument("erase_seams: trivial tree has no dual graph");
  static const OperadInstance nod = nodfr_disc();
  Tree g = eval_tree(t, nod, [](const TreeNode& nd) {
    if (nd.dec.kind == Dec::Kind::Mod)
      return Tree::corolla(Dec::dual_graph(graph_of_modulus(nd.dec.mod)));
    if (nd.dec.kind == Dec::Kind::Srf)
      return Tree::corolla(Dec::dual_graph(graph_of_surface(nd.dec.srf)));
    throw std::invalid_argument("erase_seams: bad vertex " + nd.dec.str());
  });
  return *g.root().dec.graph;
}

Tree underlying_shape(const Tree& t) {
  if (t.is_trivial()) return t;
  std::function<TreeNode(const TreeNode&)> strip = [&](const TreeNode& nd) {
    TreeNode out;
    out.is_slot = nd.is_slot;
    out.label = nd.label;
    if (!nd.is_slot) out.dec = Dec::unit(static_cast<int>(nd.kids.size()));
    for (const TreeNode& k : nd.kids) out.kids.push_back(strip(k));
    return out;
  };
  return canonical_tree(Tree::of(strip(t.root())), trivial_dec_action);
}

OperadInstance w_of(const OperadInstance& base) {
  OperadInstance w;
  w.name = "w-" + base.name;
  w.collection.name = w.name;

  const bool raw = base.corolla_decs;
  OperadInstance inner = base;  // owned copy; closures below share it

  DecAction wact = w_dec_action(base);
  w.collection.act = wact;

  DomainWithBounds wdom;
  if (raw) {
    wdom = inner.collection.domain;
  } else {
    wdom = [inner](int n, const Bounds& b) {
      std::vector<Dec> out;
      for (const Tree& e : inner.elements(n, b)) {
        if (e.is_trivial()) continue;  // unit-decorated vertices are contracted away
        std::string code = e.str();
        out.push_back(Dec::box(inner.name, std::make_shared<const Tree>(e),
                               std::move(code), n));
      }
      return out;
    };
  }
  w.collection.domain = wdom;

  w.compose = [wact](const Tree& u, const std::vector<Tree>& ps) {
    return canonical_tree(graft(u, ps, Rational(1)), wact);
  };
  w.elements = [wdom, wact](int n, const Bounds& b) {
    DomainFn dom = [&wdom, &b](int k) { return wdom(k, b); };
    std::vector<Rational> lens;
    for (const Rational& l : b.length_grid)
      if (l > Rational(0)) lens.push_back(l);
    if (lens.empty()) lens.push_back(Rational(1));
    return enumerate_w_elements(n, b.max_vertices, b.max_genus, dom, b.max_arity,
                                lens, wact, /*include_trivial=*/true);
  };
  return w;
}

std::vector<std::string> instance_names() {
  return {"tree",   "free2",   "ann",   "fr",   "nodann",   "nodfr",
          "w-tree", "w-free2", "w-ann", "w-fr", "w-nodann", "w-nodfr"};
}

std::optional<OperadInstance> instance_by_name(const std::string& name) {
  if (name.rfind("w-", 0) == 0) {
    std::string rest = name.substr(2);
    if (rest.rfind("w-", 0) == 0) return std::nullopt;
    auto b = instance_by_name(rest);
    if (!b) return std::nullopt;
    return w_of(*b);
  }
  if (name == "tree") return tree_operad();
  if (name == "free2") return free_x2();
  if (name == "ann") return ann_disc();
  if (name == "fr") return fr_disc();
  if (name == "nodann") return nodann_disc();
  if (name == "nodfr") return nodfr_disc();
  return std::nullopt;
}

}  // namespace oforge
