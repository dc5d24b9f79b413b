#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homlab/json_io.hpp"
#include "homlab/scenarios.hpp"

namespace homlab {

// Graph-level hierarchy summary: safe symbol, chordal/tree decomposition,
// dismantlability, with certificates.
ordered_json analyze_graph(const ConstraintGraph& graph);

// Scripted reproduction targets. Each runs its scenario, asserts the
// qualitative conclusion, and reports per-step results; `pass` is the
// aggregate.
struct ReproduceResult {
  std::string id;
  bool pass = false;
  ordered_json details;
};

// Catalogue ids: figure-9, figure-12, prop-9.1, prop-9.4.
std::vector<std::string> reproduce_catalogue();
ReproduceResult run_reproduce(const std::string& id, int q = 5);

// Random-graph regression of the property hierarchy. Graph-level chain
// (safe symbol => decomposable => dismantlable) is asserted on every graph;
// with `board_panel` the per-board implications are spot-checked on small
// boards (SSF under a safe symbol, M1 under decomposability, irreducibility
// search on non-dismantlable graphs, logged but never a violation when
// inconclusive).
struct FuzzResult {
  long graphs_tested = 0;
  long violations = 0;
  ordered_json details;
};

FuzzResult hierarchy_fuzz(int count, int max_vertices, std::uint64_t seed, bool board_panel);

// One-sided admissibility probe: extendability within growing radii. With
// `stabilize` the radius grows until the verdict repeats twice (or the
// neighborhood saturates the board).
ordered_json admissible_radius_report(const FiniteBoard& board, const ConstraintGraph& graph,
                                      const Configuration& config, int radius, bool stabilize);

}  // namespace homlab
