#include "homlab/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace homlab {

ChannelChain channel_chain(const ConstraintGraph& graph,
                           std::optional<std::pair<int, int>> wall, const Interaction& phi) {
  phi.validate(graph);
  ChannelChain chain;
  if (wall) {
    auto [w1, w2] = *wall;
    if (w1 < 0 || w1 >= graph.size() || w2 < 0 || w2 >= graph.size())
      throw std::invalid_argument("wall vertex out of range");
    if (!graph.adjacent(w1, w2))
      throw std::invalid_argument("wall values must be adjacent for the wall to be admissible");
    for (int u = 0; u < graph.size(); ++u)
      if (graph.adjacent(u, w1) && graph.adjacent(u, w2)) chain.states.push_back(u);
  } else {
    for (int u = 0; u < graph.size(); ++u) chain.states.push_back(u);
  }
  int n = static_cast<int>(chain.states.size());
  if (n == 0) throw std::invalid_argument("no vertex is compatible with both walls");

  for (int u : chain.states) {
    double e = phi.vertex(u);
    if (wall) e += phi.edge(u, wall->first) + phi.edge(u, wall->second);
    chain.wall_energy.push_back(e);
  }

  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int u = chain.states[i], v = chain.states[j];
      if (!graph.adjacent(u, v)) continue;
      weights(i, j) =
          std::exp(-0.5 * chain.wall_energy[i] - phi.edge(u, v) - 0.5 * chain.wall_energy[j]);
    }

  if (n == 1) {
    if (weights(0, 0) <= 0)
      throw std::invalid_argument("single-state chain needs a loop to be traversable");
    chain.perron = {1.0};
    chain.weight_eigenvalue = weights(0, 0);
    chain.transition = {{1.0}};
    return chain;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(weights);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen decomposition failed");
  double rho = solver.eigenvalues()(n - 1);
  Eigen::VectorXd r = solver.eigenvectors().col(n - 1);
  if (r(0) < 0) r = -r;
  for (int i = 0; i < n; ++i)
    if (!(r(i) > 1e-12))
      throw std::runtime_error("chain weights are reducible (no positive Perron vector)");
  if (!(rho > 0)) throw std::runtime_error("weight matrix has no positive leading eigenvalue");

  chain.weight_eigenvalue = rho;
  chain.perron.assign(r.data(), r.data() + n);
  chain.transition.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) chain.transition[i][j] = weights(i, j) * r(j) / (rho * r(i));
  return chain;
}

SpectralReport eigen_decay(const ChannelChain& chain) {
  int n = static_cast<int>(chain.states.size());
  SpectralReport report;
  if (n == 1) {
    report.eigenvalues = {1.0};
    report.lambda_star = 0.0;
    report.rate_cap = std::numeric_limits<double>::infinity();
    return report;
  }
  // Undo the Perron similarity: S = D P D^{-1} is symmetric with the same
  // spectrum as P; a failed symmetry check signals a modeling bug.
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s(i, j) = chain.perron[i] * chain.transition[i][j] / chain.perron[j];
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::runtime_error("transition matrix is not reversible");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (s + s.transpose()));
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen decomposition failed");
  for (int i = n - 1; i >= 0; --i) report.eigenvalues.push_back(solver.eigenvalues()(i));
  report.lambda_star =
      std::max(std::abs(report.eigenvalues[1]), std::abs(report.eigenvalues[n - 1]));
  report.rate_cap = -std::log(report.lambda_star);
  return report;
}

double ssm_rate_cap(int q) {
  if (q < 2) throw std::invalid_argument("the cap needs at least two states");
  return std::log(static_cast<double>(q - 1));
}

}  // namespace homlab
