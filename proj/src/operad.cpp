#include "oforge/operad.hpp"

#include <algorithm>
#include <cassert>

#include "oforge/threads.hpp"

namespace oforge {

Tree OperadInstance::pcomp(const Tree& u, int i, const Tree& v) const {
  assert(i >= 1 && i <= u.arity());
  std::vector<Tree> parts(static_cast<size_t>(u.arity()), unit);
  parts[static_cast<size_t>(i) - 1] = v;
  return compose(u, parts);
}

// ---------------------------------------------------------------------------
// Evaluation / counit
// ---------------------------------------------------------------------------

namespace {

Tree eval_node(const TreeNode& nd, const OperadInstance& O,
               const std::function<Tree(const TreeNode&)>& elem_of) {
  if (nd.is_slot) return O.unit;
  std::vector<Tree> parts;
  parts.reserve(nd.kids.size());
  for (const auto& k : nd.kids) parts.push_back(eval_node(k, O, elem_of));
  return O.compose(elem_of(nd), parts);
}

void planar_labels(const TreeNode& nd, std::vector<int>& out) {
  if (nd.is_slot) {
    out.push_back(nd.label);
    return;
  }
  for (const auto& k : nd.kids) planar_labels(k, out);
}

}  // namespace

Tree eval_tree(const Tree& t, const OperadInstance& O,
               const std::function<Tree(const TreeNode&)>& elem_of) {
  if (t.is_trivial()) return O.unit;
  Tree el = eval_node(t.root(), O, elem_of);

  // The composite's inputs stand in planar slot order; permute them so that
  // input k is the slot labeled k.
  std::vector<int> labels;
  planar_labels(t.root(), labels);
  int n = static_cast<int>(labels.size());
  std::vector<int> img(static_cast<size_t>(n), 0);
  bool is_id = true;
  for (int p = 1; p <= n; ++p) {
    img[static_cast<size_t>(labels[static_cast<size_t>(p) - 1]) - 1] = p;
    if (labels[static_cast<size_t>(p) - 1] != p) is_id = false;
  }
  if (is_id) return el;
  return O.act_on(el, Perm(std::move(img)));
}

Tree counit(const OperadInstance& O, const Tree& t) {
  return eval_tree(t, O,
                   [](const TreeNode& nd) { return Tree::corolla(nd.dec); });
}

// ---------------------------------------------------------------------------
// check_axioms
// ---------------------------------------------------------------------------

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

struct LawContext {
  const OperadInstance& O;
  const std::vector<std::vector<Tree>>& E;  // elements by arity
  int max_arity;
};

// Enumerates index tuples (i_1..i_k) over element arities summing freely.
void for_each_tuple(const std::vector<std::vector<Tree>>& E, int max_arity, int k,
                    std::vector<const Tree*>& cur,
                    const std::function<void(const std::vector<const Tree*>&)>& f) {
  if (k == 0) {
    f(cur);
    return;
  }
  for (int n = 0; n <= max_arity; ++n) {
    for (const Tree& t : E[static_cast<size_t>(n)]) {
      cur.push_back(&t);
      for_each_tuple(E, max_arity, k - 1, cur, f);
      cur.pop_back();
    }
  }
}

}  // namespace

AxiomReport check_axioms(const OperadInstance& O, const Bounds& b,
                         std::uint64_t budget) {
  AxiomReport rep;
  rep.budget = budget;

  std::vector<std::vector<Tree>> E;
  for (int n = 0; n <= b.max_arity; ++n) E.push_back(O.elements(n, b));

  std::uint64_t total_elems = 0, weighted = 0, total_pos = 0;
  for (int n = 0; n <= b.max_arity; ++n) {
    std::uint64_t sz = E[static_cast<size_t>(n)].size();
    total_elems = sat_add(total_elems, sz);
    weighted = sat_add(weighted, sat_mul(sz, static_cast<std::uint64_t>(n)));
    if (n >= 1) total_pos = sat_add(total_pos, sz);
  }

  // Plan the tuple space before touching it.
  std::uint64_t planned = sat_mul(2, total_elems);  // unit laws
  planned = sat_add(planned, sat_mul(sat_mul(weighted, weighted), total_elems));
  std::uint64_t pairs = 0;
  for (int k = 2; k <= b.max_arity; ++k)
    pairs = sat_add(pairs, sat_mul(E[static_cast<size_t>(k)].size(),
                                   static_cast<std::uint64_t>(k * (k - 1) / 2)));
  planned = sat_add(planned, sat_mul(pairs, sat_mul(total_elems, total_elems)));
  for (int n = 0; n <= std::min(b.max_arity, 4); ++n) {
    std::uint64_t f = factorial(n);
    planned = sat_add(planned, sat_mul(E[static_cast<size_t>(n)].size(),
                                       sat_add(sat_mul(f, f), 1)));
  }
  for (int k = 2; k <= b.max_arity; ++k) {
    std::uint64_t tuples = 1;
    for (int j = 0; j < k; ++j) tuples = sat_mul(tuples, total_elems);
    planned = sat_add(planned,
                      sat_mul(E[static_cast<size_t>(k)].size(),
                              sat_mul(static_cast<std::uint64_t>(k - 1), tuples)));
  }
  rep.planned = planned;
  if (planned > budget) {
    rep.budget_exceeded = true;
    return rep;
  }

  auto note = [&](const std::string& law, const std::string& tuple) {
    rep.violations.push_back({law, tuple});
  };

  // Unit laws.
  for (int n = 0; n <= b.max_arity; ++n) {
    for (const Tree& x : E[static_cast<size_t>(n)]) {
      ++rep.checked;
      if (!(O.compose(O.unit, {x}) == x)) note("unit-left", x.str());
      ++rep.checked;
      std::vector<Tree> units(static_cast<size_t>(n), O.unit);
      if (!(O.compose(x, units) == x)) note("unit-right", x.str());
    }
  }

  // Sequential composition: u o_i (v o_j w) = (u o_i v) o_{i-1+j} w.
  for (int k = 1; k <= b.max_arity; ++k) {
    const auto& Us = E[static_cast<size_t>(k)];
    std::vector<std::vector<AxiomViolation>> local(Us.size());
    std::vector<std::uint64_t> counts(Us.size(), 0);
    parallel_for(Us.size(), [&](size_t ui) {
      const Tree& u = Us[ui];
      for (int i = 1; i <= k; ++i) {
        for (int m = 1; m <= b.max_arity; ++m) {
          for (const Tree& v : E[static_cast<size_t>(m)]) {
            Tree uv = O.pcomp(u, i, v);
            for (int j = 1; j <= m; ++j) {
              for (int l = 0; l <= b.max_arity; ++l) {
                for (const Tree& w : E[static_cast<size_t>(l)]) {
                  ++counts[ui];
                  Tree lhs = O.pcomp(uv, i - 1 + j, w);
                  Tree rhs = O.pcomp(u, i, O.pcomp(v, j, w));
                  if (!(lhs == rhs))
                    local[ui].push_back(
                        {"sequential", "u=" + u.str() + " i=" + std::to_string(i) +
                                           " v=" + v.str() + " j=" + std::to_string(j) +
                                           " w=" + w.str()});
                }
              }
            }
          }
        }
      }
    });
    for (size_t ui = 0; ui < Us.size(); ++ui) {
      rep.checked += counts[ui];
      for (auto& v : local[ui]) rep.violations.push_back(std::move(v));
    }
  }

  // Parallel composition: (u o_j w) o_i v = (u o_i v) o_{j-1+l} w for i < j.
  for (int k = 2; k <= b.max_arity; ++k) {
    const auto& Us = E[static_cast<size_t>(k)];
    std::vector<std::vector<AxiomViolation>> local(Us.size());
    std::vector<std::uint64_t> counts(Us.size(), 0);
    parallel_for(Us.size(), [&](size_t ui) {
      const Tree& u = Us[ui];
      for (int i = 1; i < k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
          for (int l = 0; l <= b.max_arity; ++l) {
            for (const Tree& v : E[static_cast<size_t>(l)]) {
              Tree uiv = O.pcomp(u, i, v);
              for (int m = 0; m <= b.max_arity; ++m) {
                for (const Tree& w : E[static_cast<size_t>(m)]) {
                  ++counts[ui];
                  Tree lhs = O.pcomp(O.pcomp(u, j, w), i, v);
                  Tree rhs = O.pcomp(uiv, j - 1 + l, w);
                  if (!(lhs == rhs))
                    local[ui].push_back(
                        {"parallel", "u=" + u.str() + " i=" + std::to_string(i) +
                                         " j=" + std::to_string(j) + " v=" + v.str() +
                                         " w=" + w.str()});
                }
              }
            }
          }
        }
      }
    });
    for (size_t ui = 0; ui < Us.size(); ++ui) {
      rep.checked += counts[ui];
      for (auto& v : local[ui]) rep.violations.push_back(std::move(v));
    }
  }

  // Action laws on arities up to 4.
  for (int n = 0; n <= std::min(b.max_arity, 4); ++n) {
    auto perms = all_perms(n);
    for (const Tree& x : E[static_cast<size_t>(n)]) {
      ++rep.checked;
      if (!(O.act_on(x, Perm::identity(n)) == x)) note("action-id", x.str());
      for (const Perm& s : perms) {
        Tree xs = O.act_on(x, s);
        for (const Perm& t : perms) {
          ++rep.checked;
          if (!(O.act_on(xs, t) == O.act_on(x, s * t)))
            note("action-assoc", "x=" + x.str() + " s=" + s.str() + " t=" + t.str());
        }
      }
    }
  }

  // Equivariance along adjacent transpositions.
  for (int k = 2; k <= b.max_arity; ++k) {
    const auto& Us = E[static_cast<size_t>(k)];
    std::vector<std::vector<AxiomViolation>> local(Us.size());
    std::vector<std::uint64_t> counts(Us.size(), 0);
    parallel_for(Us.size(), [&](size_t ui) {
      const Tree& u = Us[ui];
      auto sigmas = adjacent_transpositions(k);
      std::vector<const Tree*> cur;
      for_each_tuple(E, b.max_arity, k, cur, [&](const std::vector<const Tree*>& vs) {
        std::vector<int> sizes;
        std::vector<Tree> plain;
        for (const Tree* v : vs) {
          sizes.push_back(v->arity());
          plain.push_back(*v);
        }
        for (const Perm& s : sigmas) {
          ++counts[ui];
          std::vector<Tree> permuted;
          for (int p = 1; p <= k; ++p)
            permuted.push_back(*vs[static_cast<size_t>(s(p)) - 1]);
          Tree lhs = O.compose(O.act_on(u, s), plain);
          Tree rhs = O.act_on(O.compose(u, permuted), block_perm(s, sizes));
          if (!(lhs == rhs)) {
            std::string tup = "u=" + u.str() + " s=" + s.str();
            for (const Tree* v : vs) tup += " v=" + v->str();
            local[ui].push_back({"equivariance", tup});
          }
        }
      });
    });
    for (size_t ui = 0; ui < Us.size(); ++ui) {
      rep.checked += counts[ui];
      for (auto& v : local[ui]) rep.violations.push_back(std::move(v));
    }
  }

  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const AxiomViolation& a, const AxiomViolation& p) {
              return a.law != p.law ? a.law < p.law : a.tuple < p.tuple;
            });
  return rep;
}

}  // namespace oforge
