#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "homlab/chordal_decomp.hpp"
#include "homlab/homspace.hpp"

namespace homlab {

// Nearest-neighbour interaction: non-positive energies on the vertices and
// edges of the constraint graph. Edge energies are stored densely and
// symmetrically; only entries on actual edges are ever read.
struct Interaction {
  std::vector<double> vertex_energy;
  std::vector<double> edge_table;  // |H| x |H|, row-major, symmetric

  int size() const { return static_cast<int>(vertex_energy.size()); }
  double vertex(int v) const { return vertex_energy.at(v); }
  double edge(int u, int v) const { return edge_table.at(static_cast<std::size_t>(u) * size() + v); }
  void set_edge(int u, int v, double e);

  void validate(const ConstraintGraph& graph) const;

  static Interaction zero(const ConstraintGraph& graph);
  // Potts couplings on a fully looped clique (or any graph): -beta when the
  // endpoint values agree (ferro) or differ (antiferro); beta >= 0.
  static Interaction ferro_potts(const ConstraintGraph& graph, double beta);
  static Interaction antiferro_potts(const ConstraintGraph& graph, double beta);
  // Occupied-site activity e^beta on the vertex named "1". Negative beta is
  // shift-normalized (energy log(activity) on "0" instead) so that all
  // energies stay non-positive; single-site marginals are unaffected.
  static Interaction hard_core(const ConstraintGraph& graph, double beta);
  // -beta on every vertex other than the centre; beta >= 0.
  static Interaction widom_rowlinson(const ConstraintGraph& graph, double beta, int center = 0);
  // -log(lambda) on one distinguished vertex, lambda > 1.
  static Interaction vertex_activity(const ConstraintGraph& graph, int v_star, double lambda);
  // -k log(lambda) on the k-th vertex (1-based) in the order, lambda > 1.
  static Interaction rank_activity(const ConstraintGraph& graph, const LinearOrder& order,
                                   double lambda);
};

Interaction parse_interaction_text(const ConstraintGraph& graph, const std::string& text);
Interaction read_interaction_file(const ConstraintGraph& graph, const std::string& path);

// A finite region with a pinned boundary: the conditional specification on
// `region` given `boundary` (read only on the region's outer boundary).
struct SpecificationQuery {
  SiteSet region;
  Configuration boundary;
};

// Throws std::invalid_argument unless the region is nonempty, inside the
// board's interior, and the boundary assigns every site of its outer rim.
void validate_query(const FiniteBoard& board, const ConstraintGraph& graph,
                    const SpecificationQuery& query);

double energy(const FiniteBoard& board, const ConstraintGraph& graph, const Interaction& phi,
              const SpecificationQuery& query, const Configuration& alpha);

// log Z of the region given the boundary; throws std::runtime_error when no
// admissible filling exists.
double log_partition(const FiniteBoard& board, const ConstraintGraph& graph,
                     const Interaction& phi, const SpecificationQuery& query);

// Probability of the sub-pattern beta (on a subset of the region).
double conditional_marginal(const FiniteBoard& board, const ConstraintGraph& graph,
                            const Interaction& phi, const SpecificationQuery& query,
                            const Configuration& beta);

// Joint distribution of the probe sites: probabilities indexed by the value
// tuple (probe[0] varies slowest).
struct MarginalTable {
  SiteSet probe;
  std::vector<double> probabilities;

  std::size_t index_of(const Configuration& beta, int h_size) const;
};

MarginalTable marginal_table(const FiniteBoard& board, const ConstraintGraph& graph,
                             const Interaction& phi, const SpecificationQuery& query,
                             const SiteSet& probe);

// Mixing thresholds, in log form: log lambda_0 = 2 log(delta-1) + 2 delta^e log|H|
// with exponent e = |H|-1 (WSM) or g+1 (SSM).
double lambda0_wsm_log(int h_size, int delta);
double lambda0_ssm_log(int h_size, int delta, int g);

// Total-variation decay measurement over nested or fixed geometries.
enum class DecayMode { WSM, SSM };

struct DecayInstance {
  int distance = 0;
  SiteSet region;
  SiteSet vary;        // boundary sites allowed to differ between the pair
  Configuration base;  // pinned boundary values (possibly empty)
  std::vector<std::pair<Configuration, Configuration>> explicit_pairs;
};

struct DecayGeometry {
  std::string description;
  SiteSet probe;
  std::vector<DecayInstance> instances;
};

struct DecayOptions {
  long max_exhaustive = 4096;  // boundary candidate cap for full enumeration
  int sample_count = 24;
  std::uint64_t seed = 0;
  const LinearOrder* extremes_order = nullptr;  // adds greedy max/min boundaries when sampling
};

struct DecayReport {
  DecayMode mode = DecayMode::WSM;
  std::string geometry;
  std::vector<int> distances;
  std::vector<double> tv_values;
  std::vector<long> pair_counts;
  double fitted_rate = std::numeric_limits<double>::quiet_NaN();
  double fit_residual = std::numeric_limits<double>::quiet_NaN();
  int fit_points = 0;
  bool sampled = false;  // true when any instance fell back to sampling
};

DecayReport measure_decay(const FiniteBoard& board, const ConstraintGraph& graph,
                          const Interaction& phi, DecayMode mode, const DecayGeometry& geometry,
                          const DecayOptions& options = {});

// Balls N_d(probe) for each distance, full boundary free to vary (WSM mode).
DecayGeometry nested_ball_geometry(const FiniteBoard& board, int probe, const std::vector<int>& distances);
// Fixed region N_r(probe); per distance d only boundary sites at distance
// >= d from the probe vary, nearer sites must agree (SSM mode).
DecayGeometry fixed_region_geometry(const FiniteBoard& board, int probe, int radius,
                                    const std::vector<int>& distances);

// Tail bounds for the probability that many probe sites deviate from the
// distinguished value (vertex-activity weights) or lie below the greatest
// point compatible with the boundary (rank-activity weights).
struct TailBoundReport {
  std::string variant;
  double lambda = 0;
  std::vector<int> ks;
  std::vector<double> lhs_log;
  std::vector<double> rhs_log;
  bool holds = false;
};

TailBoundReport check_tail_bound_dismantlable(const FiniteBoard& board,
                                              const ConstraintGraph& graph, int v_star,
                                              double lambda, const SpecificationQuery& query,
                                              const SiteSet& probe);

TailBoundReport check_tail_bound_umc(const FiniteBoard& board, const ConstraintGraph& graph,
                                     const LinearOrder& order, int g, double lambda,
                                     const SpecificationQuery& query, const SiteSet& probe);

// Worst single-site total variation over admissible boundary pairs of one
// full-degree site, compared against the percolation threshold bound 0.556.
struct QofPiReport {
  double q_value = 0;
  double threshold = 0.556;
  bool below_threshold = false;
  long boundary_configs = 0;
};

QofPiReport q_of_pi(const FiniteBoard& board, const ConstraintGraph& graph,
                    const Interaction& phi, int site, long budget = 2'000'000);

}  // namespace homlab
