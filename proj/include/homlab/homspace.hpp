#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homlab/graph_core.hpp"

namespace homlab {

// Partial map from board sites to graph vertices; -1 marks unassigned sites.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(int n_sites) : values_(n_sites, -1) {}
  static Configuration on(const FiniteBoard& board) { return Configuration(board.size()); }

  int size() const { return static_cast<int>(values_.size()); }
  int value(int site) const { return values_.at(site); }
  bool assigned(int site) const { return values_.at(site) >= 0; }
  void set(int site, int vertex) { values_.at(site) = vertex; }
  void unset(int site) { values_.at(site) = -1; }

  SiteSet shape() const;
  int assigned_count() const;
  bool total() const { return assigned_count() == size(); }
  Configuration restricted_to(const SiteSet& sites) const;

  // Union of two partial configurations; throws on conflicting assignments.
  static Configuration merge(const Configuration& a, const Configuration& b);
  bool agrees_with(const Configuration& other) const;  // on the common shape

  const std::vector<int>& values() const { return values_; }
  std::vector<int>& values() { return values_; }
  bool operator==(const Configuration& o) const { return values_ == o.values_; }
  bool operator<(const Configuration& o) const { return values_ < o.values_; }

 private:
  std::vector<int> values_;
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Every board edge with both ends assigned maps to a graph edge.
bool is_locally_admissible(const FiniteBoard& board, const ConstraintGraph& graph,
                           const Configuration& config);

// Backtracking extension with arc consistency; exact on the finite board.
// Sites outside `target` are unconstrained (free boundary). The input shape
// must lie inside the target.
std::optional<Configuration> extend(const FiniteBoard& board, const ConstraintGraph& graph,
                                    const Configuration& config, const SiteSet& target);
std::optional<Configuration> extend_all(const FiniteBoard& board, const ConstraintGraph& graph,
                                        const Configuration& config);
bool is_globally_admissible(const FiniteBoard& board, const ConstraintGraph& graph,
                            const Configuration& config);

// Extension within the radius-r neighborhood of the shape (the one-sided
// finite approximation: failure is definitive, success is evidence).
std::optional<Configuration> extend_radius(const FiniteBoard& board, const ConstraintGraph& graph,
                                           const Configuration& config, int radius);

enum class EnumOutcome { Complete, StoppedByCallback, BudgetExceeded };

// Enumerate every completion of `config` on `target` in canonical order
// (sites ascending, values ascending). Callback returns false to stop.
EnumOutcome for_each_extension(const FiniteBoard& board, const ConstraintGraph& graph,
                               const Configuration& config, const SiteSet& target,
                               const std::function<bool(const Configuration&)>& on_solution,
                               long node_budget = 50'000'000);

// All globally admissible configurations on shape A, canonical order.
// Throws BudgetExceeded when |H|^|A| or the search exceeds the budget.
std::vector<Configuration> language(const FiniteBoard& board, const ConstraintGraph& graph,
                                    const SiteSet& a, long budget = 2'000'000);

struct PointSet {
  std::vector<Configuration> points;
  bool complete = true;
};
PointSet enumerate_points(const FiniteBoard& board, const ConstraintGraph& graph,
                          long max_points = 2'000'000, long node_budget = 200'000'000);

// Randomized admissible extension (value order shuffled per site); used for
// boundary sampling. Deterministic for a fixed rng state.
std::optional<Configuration> extend_random(const FiniteBoard& board, const ConstraintGraph& graph,
                                           const Configuration& config, const SiteSet& target,
                                           SplitRng& rng);

// ---------------------------------------------------------------------------
// Mixing checks.

enum class VerdictStatus { Holds, Fails, Unknown };
std::string to_string(VerdictStatus s);

struct MixingCounterexample {
  Configuration alpha;
  Configuration sigma;  // empty shape for plain irreducibility failures
  Configuration beta;
};

struct SsfFailure {
  int site = -1;
  Configuration boundary;  // locally admissible on a subset of ∂{site}, unfillable
};

struct SearchBounds {
  std::string description;
  long checks = 0;
  bool budget_exhausted = false;
};

struct MixingVerdict {
  std::string property;
  int gap = 0;
  VerdictStatus status = VerdictStatus::Unknown;
  std::optional<MixingCounterexample> counterexample;
  std::optional<SsfFailure> ssf_failure;
  SearchBounds bounds;
};

struct MixingOptions {
  int max_shape = 1;              // |A|,|B| cap for plain irreducibility
  int sigma_max_size = 12;        // σ size cap
  int window_radius = 4;          // σ window: N_r({x,y})
  int sigma_max_components = 2;   // generic σ enumeration: ≤ this many pieces
  bool seed_channel_patterns = true;
  long budget = 200'000;          // cylinder checks before giving up
  long extend_budget = 20'000'000;
};

// For every admissible α on A and β on B with dist(A,B) >= gap, the union
// must stay admissible. Exact on the tested shapes; bounds reported.
MixingVerdict check_strong_irreducibility(const FiniteBoard& board, const ConstraintGraph& graph,
                                          int gap, const MixingOptions& options = {});

// Singleton α,β (justified by the singleton-reduction lemma) with σ ranging
// over enumerated shapes in a window plus, on grid boards, a library of
// channel patterns. A failure is a genuine counterexample; a pass certifies
// the property over the tested σ space only.
MixingVerdict check_TSSM(const FiniteBoard& board, const ConstraintGraph& graph, int gap,
                         const MixingOptions& options = {});

// Single-site fillability: every locally admissible pattern on every subset
// of a site's boundary extends to the site. Exact.
MixingVerdict check_SSF(const FiniteBoard& board, const ConstraintGraph& graph);

}  // namespace homlab
