#pragma once

#include <optional>
#include <vector>

#include "homlab/graph_core.hpp"

namespace homlab {

// Greedy simplicial elimination. On success `order` lists vertices in
// elimination sequence (eliminated-first first); on failure `chordless_cycle`
// holds an induced cycle of length >= 4 as the certificate.
struct ChordalityResult {
  std::optional<std::vector<int>> order;
  std::vector<int> chordless_cycle;
  bool chordal() const { return order.has_value(); }
};

// `looped_variant` = false: later neighbors of each vertex induce a clique
// (loops must be absent from the input). true: later closed neighborhoods
// must be loop-complete (pairwise adjacent including loops).
ChordalityResult perfect_elimination_order(const ConstraintGraph& g,
                                           bool looped_variant = false);
bool check_elimination_order(const ConstraintGraph& g, const std::vector<int>& order,
                             bool looped_variant);

// Every vertex looped and the graph chordal after removing all loops.
bool is_loop_chordal(const ConstraintGraph& g);

// Partition V = C ⊔ T_1..T_p ⊔ J_1..J_m:
//  - H[C] is nonempty, connected and loop-chordal;
//  - each T_j induces a tree attached to C by a single edge {root, attach};
//  - each J_k is connected and every one of its vertices has exactly one
//    core neighbor: the shared apex (which therefore dominates J_k);
//  - distinct parts see no edges between each other.
struct ChordalTreeDecomposition {
  struct TreePart {
    std::vector<int> vertices;
    int root = -1;    // the unique part vertex with a core edge
    int attach = -1;  // the core endpoint of that edge
  };
  struct ConePart {
    std::vector<int> vertices;
    int apex = -1;  // the unique dominating core vertex
  };
  std::vector<int> core;
  std::vector<TreePart> tree_parts;
  std::vector<ConePart> cone_parts;
};

std::optional<ChordalTreeDecomposition> chordal_tree_decomposition(const ConstraintGraph& h);
bool validate_decomposition(const ConstraintGraph& h, const ChordalTreeDecomposition& dec);

// Linear order on the vertices of H. by_rank[r] = vertex with rank r;
// rank[v] = position of v (0-based; larger rank = greater vertex).
struct LinearOrder {
  std::vector<int> by_rank;
  std::vector<int> rank;
  int size() const { return static_cast<int>(by_rank.size()); }
  bool less(int u, int v) const { return rank[u] < rank[v]; }
  int greatest() const { return by_rank.back(); }
};

LinearOrder make_order(const std::vector<int>& by_rank);
LinearOrder declaration_order(const ConstraintGraph& h);

// The order induced by a decomposition: cone parts first (within a part and
// across parts, declaration order), then tree parts (deepest vertices first,
// root last, ties by declaration order), then the core in elimination order
// of its deloop. Parents outrank children so maximal points can always push
// tree values toward the core.
LinearOrder natural_linear_order(const ConstraintGraph& h,
                                 const ChordalTreeDecomposition& dec);

// Looped vertex adjacent to every vertex (including itself).
std::optional<int> has_safe_symbol(const ConstraintGraph& h);

}  // namespace homlab
