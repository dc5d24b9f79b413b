#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "homlab/gibbs_engine.hpp"

namespace homlab {

// One-dimensional chain induced by running a channel between two pinned
// walls: states are the vertices compatible with both wall values, weights
// combine the vertex, edge, and wall energies, and the transition matrix is
// the Perron-normalized weight matrix (hence row-stochastic and reversible).
struct ChannelChain {
  std::vector<int> states;                       // vertices of H, ascending
  std::vector<double> wall_energy;               // combined per-state energy
  std::vector<std::vector<double>> transition;   // row-stochastic P
  std::vector<double> perron;                    // positive right eigenvector of the weights
  double weight_eigenvalue = 0;                  // Perron eigenvalue of the weight matrix
};

// wall = two vertices whose alternation forms the channel walls (they must be
// adjacent in H so the wall row itself is admissible); nullopt runs the chain
// with free walls over all of H.
ChannelChain channel_chain(const ConstraintGraph& graph,
                           std::optional<std::pair<int, int>> wall, const Interaction& phi);

struct SpectralReport {
  std::vector<double> eigenvalues;  // of the transition matrix, descending
  double lambda_star = 0;           // max(|second|, |last|)
  double rate_cap = 0;              // -log(lambda_star)
};

SpectralReport eigen_decay(const ChannelChain& chain);

// Upper bound log(q-1) on any exponential SSM rate for the q-state channel.
double ssm_rate_cap(int q);

}  // namespace homlab
