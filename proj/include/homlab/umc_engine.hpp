#pragma once

#include <optional>
#include <string>
#include <utility>

#include "homlab/chordal_decomp.hpp"
#include "homlab/homspace.hpp"

namespace homlab {

// Greedy site-by-site maximal extension of a globally admissible pattern:
// every unassigned site receives the greatest value (in the given vertex
// order) that keeps the partial configuration globally admissible. With
// `orderings` > 1 the greedy run is repeated over shuffled site orders;
// `stable` records whether all runs agreed. Two incomparable outcomes form a
// certificate that no greatest point exists above alpha.
struct MaximalConfigResult {
  Configuration omega;
  LinearOrder order_used;
  int orderings_tested = 1;
  bool stable = true;
  std::optional<std::pair<Configuration, Configuration>> incomparable;
};

MaximalConfigResult maximal_configuration(const FiniteBoard& board, const ConstraintGraph& graph,
                                          const LinearOrder& order, const Configuration& alpha,
                                          int orderings = 1, std::uint64_t seed = 0);

// True iff a <= b pointwise in the vertex order (both total).
bool dominated_by(const Configuration& a, const Configuration& b, const LinearOrder& order);

// Existence of a greatest point in [alpha] for every pattern alpha on the
// shape, checked against exhaustive point enumeration (the oracle) and
// cross-checked with the greedy construction.
struct M1Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  long alphas_checked = 0;
  std::optional<Configuration> failing_alpha;
  std::optional<std::pair<Configuration, Configuration>> incomparable;
  bool budget_exhausted = false;
};

M1Verdict verify_M1(const FiniteBoard& board, const ConstraintGraph& graph,
                    const LinearOrder& order, const SiteSet& a, const PointSet& points,
                    long budget = 50'000'000);
M1Verdict verify_M1(const FiniteBoard& board, const ConstraintGraph& graph,
                    const LinearOrder& order, const SiteSet& a, long budget = 50'000'000);

// Disagreement containment: for patterns alpha1, alpha2 on a common shape A,
// the disagreement set of their greatest points must lie within distance g of
// the disagreement set of the patterns. Reports the minimal distance that
// would have sufficed over all tested pairs.
struct M2Violation {
  Configuration alpha1;
  Configuration alpha2;
  int site = -1;      // disagreement site of the maximal points
  int distance = -1;  // its distance to the pattern disagreement set
};

struct M2Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  int measured_distance = 0;
  long pairs_checked = 0;
  std::optional<M2Violation> violation;
  bool budget_exhausted = false;
  std::string note;
};

M2Verdict verify_M2(const FiniteBoard& board, const ConstraintGraph& graph,
                    const LinearOrder& order, int g, const PointSet& points,
                    long pairs_budget = 1'000'000, std::uint64_t seed = 0);
M2Verdict verify_M2(const FiniteBoard& board, const ConstraintGraph& graph,
                    const LinearOrder& order, int g, long pairs_budget = 1'000'000,
                    std::uint64_t seed = 0);

// Descent map on triples (omega_1, omega_2, x) of points with
// omega_1(x) < omega_2(x): follows the smaller-valued neighbourhood of x
// downhill until a fixed point, at which the smaller point is improvable.
struct PMapState {
  Configuration omega_1;
  Configuration omega_2;
  int x = -1;
};

// Rank (1-based) of omega_1(x) in the vertex order; the state's level.
int d_level(const LinearOrder& order, const PMapState& state);

PMapState p_map_step(const FiniteBoard& board, const ConstraintGraph& graph,
                     const LinearOrder& order, const PMapState& state);

bool is_p_fixed_point(const FiniteBoard& board, const ConstraintGraph& graph,
                      const LinearOrder& order, const PMapState& state);

// At a fixed point, a strictly larger value for omega_1 at x that keeps the
// point admissible; the greatest such value, or nullopt when none exists.
std::optional<int> improvable_at_fixed_point(const FiniteBoard& board,
                                             const ConstraintGraph& graph,
                                             const LinearOrder& order, const PMapState& state);

}  // namespace homlab
