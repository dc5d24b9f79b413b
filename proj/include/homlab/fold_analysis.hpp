#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "homlab/graph_core.hpp"

namespace homlab {

// One fold: `folded` disappears into `absorber`; legal when the closed
// neighborhood condition N(folded) ⊆ N(absorber) holds among still-alive
// vertices. Indices refer to the original graph throughout.
struct FoldStep {
  int folded = -1;
  int absorber = -1;
  bool operator==(const FoldStep& o) const {
    return folded == o.folded && absorber == o.absorber;
  }
};

struct DismantleCertificate {
  std::vector<FoldStep> steps;  // |V|-1 steps when complete
  int terminal = -1;
  bool terminal_looped = false;
};

struct StuckReport {
  std::vector<int> stuck_vertices;   // alive set of the greedy dead end
  bool exhaustive_confirmed = false; // full search also found no sequence
};

struct DismantleResult {
  std::optional<DismantleCertificate> certificate;
  std::optional<StuckReport> stuck;
  bool dismantlable() const { return certificate.has_value(); }
};

// All legal folds of the (sub)graph, ordered by (folded, absorber).
// Requires at least two alive vertices and |H| <= 64.
std::vector<FoldStep> find_folds(const ConstraintGraph& h);
std::vector<FoldStep> find_folds_alive(const ConstraintGraph& h, std::uint64_t alive);

// Greedy dismantle (first legal fold at every step); if the greedy path dies,
// an exhaustive memoized search over alive-sets settles the answer, so the
// overall verdict is exact.
DismantleResult dismantle(const ConstraintGraph& h);
bool is_dismantlable(const ConstraintGraph& h);

// Exhaustive search over fold sequences, memoized on alive vertex sets.
// Used both as the greedy fallback and as the independent test oracle.
// `complete`, when given, reports whether the budget sufficed.
bool exhaustive_dismantlable(const ConstraintGraph& h, long budget = 1'000'000,
                             bool* complete = nullptr);

// Validity check used on certificates before they are trusted or emitted.
bool replay_certificate(const ConstraintGraph& h, const DismantleCertificate& cert);

// Looped vertices that terminate at least one complete fold sequence.
struct PersistentResult {
  std::vector<int> vertices;
  bool complete = true;  // false when the expansion budget ran out
  long expansions = 0;
};
PersistentResult persistent_vertices(const ConstraintGraph& h, long budget = 1'000'000);

}  // namespace homlab
