#include "homlab/chordal_decomp.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace homlab {

namespace {

// Is `v` simplicial within `alive` (its alive neighbors pairwise adjacent,
// ignoring v itself)? Input must be loop-free.
bool simplicial(const ConstraintGraph& g, const std::vector<char>& alive, int v) {
  std::vector<int> nbrs;
  for (int u : g.neighbors(v))
    if (alive[u] && u != v) nbrs.push_back(u);
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      if (!g.adjacent(nbrs[i], nbrs[j])) return false;
  return true;
}

// A chordless cycle of length >= 4 in a graph known not to be chordal,
// restricted to `alive`. Classic construction: find v with two nonadjacent
// alive neighbors u,w connected in G - (N[v] \ {u,w}); the shortest such
// path closed through v is induced.
std::vector<int> find_chordless_cycle(const ConstraintGraph& g, const std::vector<char>& alive) {
  int n = g.size();
  for (int v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    std::vector<int> nbrs;
    for (int u : g.neighbors(v))
      if (alive[u] && u != v) nbrs.push_back(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        int u = nbrs[i], w = nbrs[j];
        if (g.adjacent(u, w)) continue;
        // BFS from u to w avoiding N[v] except the endpoints.
        std::vector<int> parent(n, -2);
        for (int x = 0; x < n; ++x)
          if (!alive[x]) parent[x] = -3;
        for (int x : g.neighbors(v))
          if (x != u && x != w) parent[x] = -3;
        parent[v] = -3;
        std::deque<int> queue{u};
        parent[u] = -1;
        while (!queue.empty()) {
          int x = queue.front();
          queue.pop_front();
          if (x == w) break;
          for (int y : g.neighbors(x)) {
            if (y == x || parent[y] != -2) continue;
            // Forbid shortcuts: interior path vertices may not touch u except
            // as the BFS start. (BFS shortest path already prevents chords
            // within the path.)
            parent[y] = x;
            queue.push_back(y);
          }
        }
        if (parent[w] == -2 || parent[w] == -3) continue;
        std::vector<int> cycle{v};
        for (int x = w; x != -1; x = parent[x]) cycle.push_back(x);
        // cycle = v, w, ..., u — already a closed induced cycle through v.
        return cycle;
      }
    }
  }
  return {};
}

}  // namespace

ChordalityResult perfect_elimination_order(const ConstraintGraph& g, bool looped_variant) {
  ChordalityResult out;
  const ConstraintGraph* work = &g;
  ConstraintGraph stripped = g;  // placeholder; reassigned when needed
  if (looped_variant) {
    if (!g.all_loops()) throw std::invalid_argument("looped elimination expects loops everywhere");
    stripped = g.without_loops();
    work = &stripped;
  } else {
    if (!g.loop_vertices().empty())
      throw std::invalid_argument("plain elimination expects a loop-free graph");
  }
  int n = work->size();
  std::vector<char> alive(n, 1);
  std::vector<int> order;
  order.reserve(n);
  for (int round = 0; round < n; ++round) {
    int pick = -1;
    for (int v = 0; v < n && pick < 0; ++v)
      if (alive[v] && simplicial(*work, alive, v)) pick = v;
    if (pick < 0) {
      out.chordless_cycle = find_chordless_cycle(*work, alive);
      return out;
    }
    order.push_back(pick);
    alive[pick] = 0;
  }
  out.order = std::move(order);
  return out;
}

bool check_elimination_order(const ConstraintGraph& g, const std::vector<int>& order,
                             bool looped_variant) {
  int n = g.size();
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    if (v < 0 || v >= n || pos[v] >= 0) return false;
    pos[v] = i;
  }
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    std::vector<int> later;
    for (int u : g.neighbors(v))
      if (u != v && pos[u] > i) later.push_back(u);
    if (looped_variant) {
      // v together with its later neighbors must be loop-complete.
      later.push_back(v);
      for (std::size_t a = 0; a < later.size(); ++a)
        for (std::size_t b = a; b < later.size(); ++b)
          if (!g.adjacent(later[a], later[b])) return false;
    } else {
      for (std::size_t a = 0; a < later.size(); ++a)
        for (std::size_t b = a + 1; b < later.size(); ++b)
          if (!g.adjacent(later[a], later[b])) return false;
    }
  }
  return true;
}

bool is_loop_chordal(const ConstraintGraph& g) {
  if (!g.all_loops()) return false;
  return perfect_elimination_order(g.without_loops(), false).chordal();
}

namespace {

std::vector<std::vector<int>> connected_components(const ConstraintGraph& g,
                                                   const std::vector<char>& in_set) {
  int n = g.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (!in_set[s] || seen[s]) continue;
    std::vector<int> comp;
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      comp.push_back(x);
      for (int y : g.neighbors(x))
        if (in_set[y] && !seen[y] && y != x) {
          seen[y] = 1;
          queue.push_back(y);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

bool connected_within(const ConstraintGraph& g, const std::vector<int>& verts) {
  if (verts.empty()) return false;
  std::vector<char> in_set(g.size(), 0);
  for (int v : verts) in_set[v] = 1;
  return connected_components(g, in_set).size() == 1;
}

// Is the component a tree (simple, connected, |E| = |V|-1, loop-free) hanging
// off the core by exactly one edge?
std::optional<ChordalTreeDecomposition::TreePart> classify_tree(
    const ConstraintGraph& h, const std::vector<int>& comp, const std::vector<char>& in_core) {
  int internal_edges = 0;
  int root = -1, attach = -1, core_edges = 0;
  for (int v : comp) {
    if (h.has_loop(v)) return std::nullopt;
    for (int u : h.neighbors(v)) {
      if (u == v) continue;
      if (in_core[u]) {
        ++core_edges;
        root = v;
        attach = u;
      } else if (std::binary_search(comp.begin(), comp.end(), u) && u > v) {
        ++internal_edges;
      }
    }
  }
  if (core_edges != 1) return std::nullopt;
  if (internal_edges != static_cast<int>(comp.size()) - 1) return std::nullopt;
  // connected + |E| = |V|-1 = tree; connectivity holds: comp is a component.
  return ChordalTreeDecomposition::TreePart{comp, root, attach};
}

std::optional<ChordalTreeDecomposition::ConePart> classify_cone(
    const ConstraintGraph& h, const std::vector<int>& comp, const std::vector<char>& in_core) {
  // Every vertex of the part must see exactly one core vertex — the shared
  // apex. A second core contact anywhere breaks the fold of the part onto
  // the apex (the contact need not be adjacent to the apex).
  int apex = -1;
  for (int v : comp) {
    int mine = -1;
    for (int u : h.neighbors(v)) {
      if (u == v || !in_core[u]) continue;
      if (mine >= 0 && mine != u) return std::nullopt;
      mine = u;
    }
    if (mine < 0) return std::nullopt;
    if (apex >= 0 && apex != mine) return std::nullopt;
    apex = mine;
  }
  if (apex < 0) return std::nullopt;
  return ChordalTreeDecomposition::ConePart{comp, apex};
}

}  // namespace

bool validate_decomposition(const ConstraintGraph& h, const ChordalTreeDecomposition& dec) {
  int n = h.size();
  std::vector<int> owner(n, -1);  // 0 = core, 1.. = part index + 1
  if (dec.core.empty()) return false;
  for (int v : dec.core) {
    if (v < 0 || v >= n || owner[v] >= 0) return false;
    owner[v] = 0;
  }
  int part_id = 0;
  auto claim = [&](const std::vector<int>& verts) {
    ++part_id;
    for (int v : verts) {
      if (v < 0 || v >= n || owner[v] >= 0) return false;
      owner[v] = part_id;
    }
    return !verts.empty();
  };
  for (const auto& t : dec.tree_parts)
    if (!claim(t.vertices)) return false;
  for (const auto& j : dec.cone_parts)
    if (!claim(j.vertices)) return false;
  for (int v = 0; v < n; ++v)
    if (owner[v] < 0) return false;

  // Core: nonempty, connected, loop-chordal.
  if (!connected_within(h, dec.core)) return false;
  if (!is_loop_chordal(h.induced(dec.core))) return false;

  // No edges between distinct non-core parts.
  for (int u = 0; u < n; ++u)
    for (int v : h.neighbors(u))
      if (owner[u] > 0 && owner[v] > 0 && owner[u] != owner[v]) return false;

  std::vector<char> in_core(n, 0);
  for (int v : dec.core) in_core[v] = 1;
  for (const auto& t : dec.tree_parts) {
    auto sorted = make_site_set(t.vertices);
    if (!connected_within(h, sorted)) return false;
    auto got = classify_tree(h, sorted, in_core);
    if (!got || got->root != t.root || got->attach != t.attach) return false;
  }
  for (const auto& j : dec.cone_parts) {
    auto sorted = make_site_set(j.vertices);
    if (!connected_within(h, sorted)) return false;
    auto got = classify_cone(h, sorted, in_core);
    if (!got || got->apex != j.apex) return false;
  }
  return true;
}

std::optional<ChordalTreeDecomposition> chordal_tree_decomposition(const ConstraintGraph& h) {
  auto loops = h.loop_vertices();
  int m = static_cast<int>(loops.size());
  if (m == 0) return std::nullopt;
  if (m > 20)
    throw std::invalid_argument("decomposition search supports at most 20 looped vertices");

  // Candidate cores: subsets of the looped vertices, largest first; within a
  // size, lexicographically smallest vertex set first (declaration order).
  std::vector<std::vector<int>> candidates;
  for (std::uint64_t bits = 1; bits < (1ULL << m); ++bits) {
    std::vector<int> core;
    for (int i = 0; i < m; ++i)
      if (bits >> i & 1) core.push_back(loops[i]);
    candidates.push_back(std::move(core));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() > b.size();
                     return a < b;
                   });

  for (const auto& core : candidates) {
    if (!connected_within(h, core)) continue;
    if (!is_loop_chordal(h.induced(core))) continue;
    std::vector<char> in_core(h.size(), 0);
    std::vector<char> in_rest(h.size(), 1);
    for (int v : core) {
      in_core[v] = 1;
      in_rest[v] = 0;
    }
    auto comps = connected_components(h, in_rest);
    ChordalTreeDecomposition dec;
    dec.core = core;
    bool ok = true;
    for (const auto& comp : comps) {
      // Parts must be components and must not touch each other; the component
      // split guarantees both, so only the T/J classification remains.
      if (auto cone = classify_cone(h, comp, in_core)) {
        dec.cone_parts.push_back(*cone);
      } else if (auto tree = classify_tree(h, comp, in_core)) {
        dec.tree_parts.push_back(*tree);
      } else {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (!validate_decomposition(h, dec)) continue;  // belt and braces
    return dec;
  }
  return std::nullopt;
}

LinearOrder make_order(const std::vector<int>& by_rank) {
  LinearOrder out;
  out.by_rank = by_rank;
  int n = static_cast<int>(by_rank.size());
  out.rank.assign(n, -1);
  for (int r = 0; r < n; ++r) {
    int v = by_rank[r];
    if (v < 0 || v >= n || out.rank[v] >= 0)
      throw std::invalid_argument("order is not a permutation");
    out.rank[v] = r;
  }
  return out;
}

LinearOrder declaration_order(const ConstraintGraph& h) {
  std::vector<int> ids(h.size());
  for (int i = 0; i < h.size(); ++i) ids[i] = i;
  return make_order(ids);
}

LinearOrder natural_linear_order(const ConstraintGraph& h,
                                 const ChordalTreeDecomposition& dec) {
  if (!validate_decomposition(h, dec))
    throw std::invalid_argument("natural order needs a valid decomposition");
  std::vector<int> by_rank;
  by_rank.reserve(h.size());

  // Cone parts first, parts ordered by smallest member, members in
  // declaration order.
  auto cones = dec.cone_parts;
  std::sort(cones.begin(), cones.end(), [](const auto& a, const auto& b) {
    return *std::min_element(a.vertices.begin(), a.vertices.end()) <
           *std::min_element(b.vertices.begin(), b.vertices.end());
  });
  for (const auto& j : cones) {
    auto verts = make_site_set(j.vertices);
    for (int v : verts) by_rank.push_back(v);
  }

  // Tree parts next: within a part, deepest vertices first and the root
  // last (a maximal point pushes tree values up toward the core, so parents
  // must rank above their children); ties in declaration order.
  auto trees = dec.tree_parts;
  std::sort(trees.begin(), trees.end(), [](const auto& a, const auto& b) {
    return *std::min_element(a.vertices.begin(), a.vertices.end()) <
           *std::min_element(b.vertices.begin(), b.vertices.end());
  });
  for (const auto& t : trees) {
    auto verts = make_site_set(t.vertices);
    // BFS depth from the root within the part.
    std::vector<int> depth(h.size(), -1);
    std::deque<int> queue{t.root};
    depth[t.root] = 0;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : h.neighbors(x))
        if (y != x && std::binary_search(verts.begin(), verts.end(), y) && depth[y] < 0) {
          depth[y] = depth[x] + 1;
          queue.push_back(y);
        }
    }
    std::vector<int> sorted = verts;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](int a, int b) { return depth[a] > depth[b]; });
    for (int v : sorted) by_rank.push_back(v);
  }

  // Core last, in elimination order of its deloop (eliminated-first =
  // smallest). Ranks map back through the induced subgraph's names.
  auto core_graph = h.induced(dec.core);
  auto elim = perfect_elimination_order(core_graph.without_loops(), false);
  if (!elim.chordal()) throw std::logic_error("validated core must be loop-chordal");
  for (int local : *elim.order) by_rank.push_back(h.index_of(core_graph.name(local)));

  return make_order(by_rank);
}

std::optional<int> has_safe_symbol(const ConstraintGraph& h) {
  for (int v = 0; v < h.size(); ++v) {
    if (!h.has_loop(v)) continue;
    if (h.degree(v) == h.size()) return v;  // neighbors include v itself
  }
  return std::nullopt;
}

}  // namespace homlab
