#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "homlab/fold_analysis.hpp"
#include "homlab/graph_core.hpp"

using namespace homlab;

namespace {

// All labelled trees on n vertices via Prüfer sequences, as edge lists.
std::vector<std::vector<std::pair<int, int>>> all_trees(int n) {
  std::vector<std::vector<std::pair<int, int>>> trees;
  if (n == 2) return {{{0, 1}}};
  std::vector<int> seq(n - 2, 0);
  while (true) {
    std::vector<int> degree(n, 1);
    for (int s : seq) ++degree[s];
    std::vector<std::pair<int, int>> edges;
    std::vector<int> deg = degree;
    for (int s : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      edges.emplace_back(leaf, s);
      deg[leaf] = 0;
      --deg[s];
    }
    int u = -1, v = -1;
    for (int i = 0; i < n; ++i)
      if (deg[i] == 1) (u < 0 ? u : v) = i;
    edges.emplace_back(u, v);
    trees.push_back(std::move(edges));
    int i = static_cast<int>(seq.size()) - 1;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return trees;
}

bool loop_set_connected(const std::vector<std::pair<int, int>>& tree_edges, int n,
                        std::uint64_t loops) {
  if (loops == 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : tree_edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  int start = 0;
  while (!(loops >> start & 1)) ++start;
  std::uint64_t seen = 1ULL << start;
  std::vector<int> queue{start};
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    for (int y : adj[x])
      if ((loops >> y & 1) && !(seen >> y & 1)) {
        seen |= 1ULL << y;
        queue.push_back(y);
      }
  }
  return seen == loops;
}

}  // namespace

TEST_CASE("folds of the hard-core graph, an edge, and the bottleneck graph") {
  ConstraintGraph hphi = generate_named("H_phi");
  CHECK(find_folds(hphi) == std::vector<FoldStep>{{1, 0}});  // N(1)={0} inside N(0)={0,1}

  ConstraintGraph k2 = generate_named("K_n", 2);
  CHECK(find_folds(k2).empty());  // N(a)={b} vs N(b)={a}: incomparable

  ConstraintGraph abcd = generate_named("counterexample_abcd");
  int d = abcd.index_of("d"), a = abcd.index_of("a");
  CHECK(find_folds(abcd) == std::vector<FoldStep>{{d, a}});  // N(d)={b,c} inside N(a)={a,b,c}
}

TEST_CASE("fold list ordering and the alive-mask variant") {
  ConstraintGraph k3l = generate_named("K_n_looped", 3);
  auto folds = find_folds(k3l);
  CHECK(folds.size() == 6);  // every ordered pair of a loop-complete graph
  CHECK(std::is_sorted(folds.begin(), folds.end(), [](const FoldStep& p, const FoldStep& q) {
    return std::pair{p.folded, p.absorber} < std::pair{q.folded, q.absorber};
  }));

  ConstraintGraph abcd = generate_named("counterexample_abcd");
  // with d removed, both b and c fold onto a
  auto alive = find_folds_alive(abcd, 0b0111);
  CHECK(alive == std::vector<FoldStep>{{1, 0}, {2, 0}});
  CHECK_THROWS(find_folds_alive(abcd, 0b0001));  // a single alive vertex has no folds
}

TEST_CASE("the bottleneck graph dismantles and its certificate replays") {
  ConstraintGraph abcd = generate_named("counterexample_abcd");
  DismantleResult res = dismantle(abcd);
  REQUIRE(res.dismantlable());
  const DismantleCertificate& cert = *res.certificate;
  CHECK(cert.steps.size() == 3);
  CHECK(cert.terminal_looped);
  CHECK(replay_certificate(abcd, cert));
  CHECK(cert.steps.front() == FoldStep{abcd.index_of("d"), abcd.index_of("a")});
}

TEST_CASE("replay rejects tampered certificates") {
  ConstraintGraph abcd = generate_named("counterexample_abcd");
  DismantleCertificate cert = *dismantle(abcd).certificate;
  DismantleCertificate bad = cert;
  std::swap(bad.steps.front(), bad.steps.back());  // d must fold first
  CHECK(!replay_certificate(abcd, bad));
  bad = cert;
  bad.steps.pop_back();  // too short
  CHECK(!replay_certificate(abcd, bad));
  bad = cert;
  bad.terminal = bad.steps.front().folded;  // wrong survivor
  CHECK(!replay_certificate(abcd, bad));
}

TEST_CASE("the looped-ends path is stuck, with exhaustive confirmation") {
  ConstraintGraph b1 = generate_named("barbell_n", 1);
  DismantleResult res = dismantle(b1);
  CHECK(!res.dismantlable());
  REQUIRE(res.stuck.has_value());
  CHECK(res.stuck->exhaustive_confirmed);
  CHECK(res.stuck->stuck_vertices.size() == 3);  // no fold exists at all
  CHECK(!is_dismantlable(b1));
  CHECK(!exhaustive_dismantlable(b1));
}

TEST_CASE("loop-complete graphs dismantle in size-minus-one steps") {
  for (int q : {1, 2, 3, 5, 8}) {
    ConstraintGraph g = generate_named("K_n_looped", q);
    DismantleResult res = dismantle(g);
    REQUIRE(res.dismantlable());
    CHECK(static_cast<int>(res.certificate->steps.size()) == q - 1);
    CHECK(res.certificate->terminal_looped);
  }
}

TEST_CASE("loopless cliques are rigid") {
  CHECK(!is_dismantlable(generate_named("K_n", 5)));
  CHECK(!is_dismantlable(generate_named("K_n", 3)));
  CHECK(!is_dismantlable(generate_named("K_n", 2)));
}

TEST_CASE("clique-plus-two-apexes graphs always dismantle") {
  for (int q : {1, 2, 3, 5, 13}) {
    ConstraintGraph hq = generate_named("H_q", q);
    DismantleResult res = dismantle(hq);
    REQUIRE(res.dismantlable());
    CHECK(replay_certificate(hq, *res.certificate));
  }
}

TEST_CASE("looped trees dismantle exactly when the looped set is connected and nonempty") {
  // exhaustive over all labelled trees on 2..6 vertices and all loop subsets
  for (int n = 2; n <= 6; ++n) {
    for (const auto& tree_edges : all_trees(n)) {
      for (std::uint64_t loops = 0; loops < (1ULL << n); ++loops) {
        auto edges = tree_edges;
        for (int v = 0; v < n; ++v)
          if (loops >> v & 1) edges.emplace_back(v, v);
        ConstraintGraph g = ConstraintGraph::from_indices(n, edges);
        bool expect = loop_set_connected(tree_edges, n, loops);
        CHECK(is_dismantlable(g) == expect);
      }
    }
  }
}

TEST_CASE("greedy verdict matches the exhaustive oracle on every small labelled graph") {
  // n <= 4: all 2 + 8 + 64 + 1024 labelled graphs with loops
  for (int n = 1; n <= 4; ++n) {
    int pairs = n * (n - 1) / 2;
    int bits = pairs + n;
    for (std::uint64_t code = 0; code < (1ULL << bits); ++code) {
      std::vector<std::pair<int, int>> edges;
      int bit = 0;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
          if (code >> bit & 1) edges.emplace_back(u, v);
      for (int v = 0; v < n; ++v, ++bit)
        if (code >> bit & 1) edges.emplace_back(v, v);
      ConstraintGraph g = ConstraintGraph::from_indices(n, edges);
      DismantleResult res = dismantle(g);
      CHECK(res.dismantlable() == exhaustive_dismantlable(g));
      if (res.dismantlable()) CHECK(replay_certificate(g, *res.certificate));
    }
  }
}

TEST_CASE("persistent vertices of the catalogue graphs") {
  ConstraintGraph hphi = generate_named("H_phi");
  CHECK(persistent_vertices(hphi).vertices == std::vector<int>{0});

  for (int q : {1, 3, 5}) {
    ConstraintGraph hq = generate_named("H_q", q);
    auto res = persistent_vertices(hq);
    CHECK(res.complete);
    CHECK(std::count(res.vertices.begin(), res.vertices.end(), hq.index_of("a")) == 1);
  }

  auto k3 = persistent_vertices(generate_named("K_n_looped", 3));
  CHECK(k3.vertices == std::vector<int>{0, 1, 2});  // symmetry: every vertex terminates a sequence

  // not dismantlable: no terminal is reachable at all
  CHECK(persistent_vertices(generate_named("barbell_n", 1)).vertices.empty());
}

TEST_CASE("single-vertex graphs") {
  ConstraintGraph looped({"v"}, {{"v", "v"}});
  DismantleResult res = dismantle(looped);
  REQUIRE(res.dismantlable());
  CHECK(res.certificate->steps.empty());
  CHECK(res.certificate->terminal == 0);
  CHECK(res.certificate->terminal_looped);
  CHECK(persistent_vertices(looped).vertices == std::vector<int>{0});

  ConstraintGraph bare({"v"}, {});
  CHECK(dismantle(bare).dismantlable());
  CHECK(!dismantle(bare).certificate->terminal_looped);
  CHECK(persistent_vertices(bare).vertices.empty());
}
