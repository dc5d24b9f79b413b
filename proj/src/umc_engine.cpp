#include "homlab/umc_engine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace homlab {

bool dominated_by(const Configuration& a, const Configuration& b, const LinearOrder& order) {
  if (a.size() != b.size()) throw std::invalid_argument("configurations on different boards");
  for (int i = 0; i < a.size(); ++i) {
    int va = a.value(i), vb = b.value(i);
    if (va < 0 || vb < 0) throw std::invalid_argument("dominance needs total configurations");
    if (order.rank[va] > order.rank[vb]) return false;
  }
  return true;
}

namespace {

Configuration greedy_maximal(const FiniteBoard& board, const ConstraintGraph& graph,
                             const LinearOrder& order, const Configuration& alpha,
                             const std::vector<int>& site_order) {
  Configuration cur = alpha;
  for (int site : site_order) {
    bool placed = false;
    for (int r = graph.size() - 1; r >= 0; --r) {
      int v = order.by_rank[r];
      bool local_ok = true;
      for (int y : board.neighbors(site)) {
        int vy = cur.value(y);
        if (vy >= 0 && !graph.adjacent(v, vy)) {
          local_ok = false;
          break;
        }
      }
      if (!local_ok) continue;
      cur.set(site, v);
      if (is_globally_admissible(board, graph, cur)) {
        placed = true;
        break;
      }
      cur.unset(site);
    }
    if (!placed) throw std::logic_error("greedy extension stuck on an admissible pattern");
  }
  return cur;
}

}  // namespace

MaximalConfigResult maximal_configuration(const FiniteBoard& board, const ConstraintGraph& graph,
                                          const LinearOrder& order, const Configuration& alpha,
                                          int orderings, std::uint64_t seed) {
  if (static_cast<int>(order.by_rank.size()) != graph.size())
    throw std::invalid_argument("order does not cover the constraint graph");
  if (!is_globally_admissible(board, graph, alpha))
    throw std::invalid_argument("pattern must be globally admissible");
  std::vector<int> free_sites;
  for (int s = 0; s < board.size(); ++s)
    if (!alpha.assigned(s)) free_sites.push_back(s);

  MaximalConfigResult result;
  result.order_used = order;
  result.orderings_tested = std::max(1, orderings);
  result.omega = greedy_maximal(board, graph, order, alpha, free_sites);

  SplitRng rng(seed);
  std::vector<Configuration> outcomes{result.omega};
  for (int t = 1; t < result.orderings_tested; ++t) {
    std::vector<int> shuffled = free_sites;
    for (int i = static_cast<int>(shuffled.size()) - 1; i > 0; --i)
      std::swap(shuffled[i], shuffled[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    Configuration w = greedy_maximal(board, graph, order, alpha, shuffled);
    if (!(w == result.omega)) result.stable = false;
    outcomes.push_back(std::move(w));
  }
  if (!result.stable) {
    for (std::size_t i = 0; i < outcomes.size() && !result.incomparable; ++i)
      for (std::size_t j = i + 1; j < outcomes.size(); ++j)
        if (!dominated_by(outcomes[i], outcomes[j], order) &&
            !dominated_by(outcomes[j], outcomes[i], order)) {
          result.incomparable = std::make_pair(outcomes[i], outcomes[j]);
          break;
        }
  }
  return result;
}

namespace {

// Pointwise maximum of a group of points in the vertex order.
Configuration pointwise_max(const std::vector<const Configuration*>& group,
                            const LinearOrder& order, int board_size) {
  Configuration m(board_size);
  for (int s = 0; s < board_size; ++s) {
    int best = -1;
    for (const Configuration* p : group) {
      int v = p->value(s);
      if (best < 0 || order.rank[v] > order.rank[best]) best = v;
    }
    m.set(s, best);
  }
  return m;
}

std::map<Configuration, std::vector<const Configuration*>> group_by_restriction(
    const PointSet& points, const SiteSet& a) {
  std::map<Configuration, std::vector<const Configuration*>> groups;
  for (const Configuration& p : points.points) groups[p.restricted_to(a)].push_back(&p);
  return groups;
}

}  // namespace

M1Verdict verify_M1(const FiniteBoard& board, const ConstraintGraph& graph,
                    const LinearOrder& order, const SiteSet& a, const PointSet& points,
                    long budget) {
  M1Verdict verdict;
  if (!points.complete) {
    verdict.budget_exhausted = true;
    return verdict;
  }
  long work = 0;
  auto groups = group_by_restriction(points, a);
  for (const auto& [alpha, group] : groups) {
    ++verdict.alphas_checked;
    work += static_cast<long>(group.size());
    if (work > budget) {
      verdict.status = VerdictStatus::Unknown;
      verdict.budget_exhausted = true;
      return verdict;
    }
    Configuration m = pointwise_max(group, order, board.size());
    bool is_point = std::any_of(group.begin(), group.end(),
                                [&](const Configuration* p) { return *p == m; });
    if (!is_point) {
      verdict.status = VerdictStatus::Fails;
      verdict.failing_alpha = alpha;
      // Any two distinct maximal elements of the group are incomparable.
      std::vector<const Configuration*> maximal;
      for (const Configuration* p : group) {
        bool dominated = false;
        for (const Configuration* q : group)
          if (q != p && dominated_by(*p, *q, order) && !(*p == *q)) {
            dominated = true;
            break;
          }
        if (!dominated) maximal.push_back(p);
      }
      if (maximal.size() >= 2) verdict.incomparable = std::make_pair(*maximal[0], *maximal[1]);
      return verdict;
    }
    Configuration greedy = maximal_configuration(board, graph, order, alpha).omega;
    if (!(greedy == m))
      throw std::logic_error("greedy maximal point disagrees with the enumeration oracle");
  }
  verdict.status = VerdictStatus::Holds;
  return verdict;
}

M1Verdict verify_M1(const FiniteBoard& board, const ConstraintGraph& graph,
                    const LinearOrder& order, const SiteSet& a, long budget) {
  return verify_M1(board, graph, order, a, enumerate_points(board, graph), budget);
}

namespace {

std::vector<SiteSet> m2_shapes(const FiniteBoard& board, std::uint64_t seed) {
  std::vector<SiteSet> shapes;
  if (board.size() <= 16) {
    for (int i = 0; i < board.size(); ++i) {
      shapes.push_back({i});
      for (int j = i + 1; j < board.size(); ++j) {
        shapes.push_back({i, j});
        for (int k = j + 1; k < board.size(); ++k) shapes.push_back({i, j, k});
      }
    }
  } else {
    SplitRng rng(seed);
    for (int t = 0; t < 64; ++t) {
      SiteSet s;
      int size = 1 + static_cast<int>(rng.below(3));
      while (static_cast<int>(s.size()) < size) {
        int site = static_cast<int>(rng.below(static_cast<std::uint64_t>(board.size())));
        if (!site_set_contains(s, site)) s = site_set_union(s, {site});
      }
      shapes.push_back(s);
    }
  }
  return shapes;
}

}  // namespace

M2Verdict verify_M2(const FiniteBoard& board, const ConstraintGraph& /*graph*/,
                    const LinearOrder& order, int g, const PointSet& points, long pairs_budget,
                    std::uint64_t seed) {
  M2Verdict verdict;
  if (!points.complete) {
    verdict.budget_exhausted = true;
    verdict.note = "point enumeration incomplete";
    return verdict;
  }
  for (const SiteSet& a : m2_shapes(board, seed)) {
    auto groups = group_by_restriction(points, a);
    // Greatest point per pattern, demanded up front (M2 presumes M1).
    std::vector<Configuration> alphas;
    std::vector<Configuration> omegas;
    for (const auto& [alpha, group] : groups) {
      Configuration m = pointwise_max(group, order, board.size());
      bool is_point = std::any_of(group.begin(), group.end(),
                                  [&](const Configuration* p) { return *p == m; });
      if (!is_point)
        throw std::runtime_error("no greatest point above a tested pattern (M1 fails)");
      alphas.push_back(alpha);
      omegas.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      for (std::size_t j = i + 1; j < alphas.size(); ++j) {
        if (++verdict.pairs_checked > pairs_budget) {
          verdict.status = VerdictStatus::Unknown;
          verdict.budget_exhausted = true;
          return verdict;
        }
        SiteSet sigma_a;
        for (int s : a)
          if (alphas[i].value(s) != alphas[j].value(s)) sigma_a.push_back(s);
        for (int s = 0; s < board.size(); ++s) {
          if (omegas[i].value(s) == omegas[j].value(s)) continue;
          auto d = board.distance(SiteSet{s}, sigma_a);
          int dist = d ? *d : board.size();
          verdict.measured_distance = std::max(verdict.measured_distance, dist);
          if (dist > g && !verdict.violation)
            verdict.violation = M2Violation{alphas[i], alphas[j], s, dist};
        }
      }
    }
  }
  verdict.status = verdict.violation ? VerdictStatus::Fails : VerdictStatus::Holds;
  return verdict;
}

M2Verdict verify_M2(const FiniteBoard& board, const ConstraintGraph& graph,
                    const LinearOrder& order, int g, long pairs_budget, std::uint64_t seed) {
  return verify_M2(board, graph, order, g, enumerate_points(board, graph), pairs_budget, seed);
}

namespace {

void validate_state(const FiniteBoard& board, const ConstraintGraph& graph,
                    const LinearOrder& order, const PMapState& state) {
  if (state.omega_1.size() != board.size() || state.omega_2.size() != board.size())
    throw std::invalid_argument("state configurations do not match the board");
  if (state.x < 0 || state.x >= board.size()) throw std::invalid_argument("site out of range");
  if (state.omega_1.assigned_count() != board.size() ||
      state.omega_2.assigned_count() != board.size())
    throw std::invalid_argument("state configurations must be total");
  if (!is_locally_admissible(board, graph, state.omega_1) ||
      !is_locally_admissible(board, graph, state.omega_2))
    throw std::invalid_argument("state configurations must be points");
  int v1 = state.omega_1.value(state.x), v2 = state.omega_2.value(state.x);
  if (order.rank[v1] >= order.rank[v2])
    throw std::invalid_argument("state requires omega_1(x) < omega_2(x)");
}

struct NeighbourSplit {
  std::vector<int> below;  // omega_1(y) < omega_2(y)
  std::vector<int> above;  // omega_1(y) > omega_2(y)
  std::vector<int> equal;
};

NeighbourSplit split_neighbours(const FiniteBoard& board, const LinearOrder& order,
                                const PMapState& state) {
  NeighbourSplit split;
  int vx = state.omega_1.value(state.x);
  for (int y : board.neighbors(state.x)) {
    int w1 = state.omega_1.value(y);
    if (order.rank[w1] >= order.rank[vx]) continue;  // only the strictly smaller neighbours
    int w2 = state.omega_2.value(y);
    if (order.rank[w1] < order.rank[w2])
      split.below.push_back(y);
    else if (order.rank[w1] > order.rank[w2])
      split.above.push_back(y);
    else
      split.equal.push_back(y);
  }
  return split;
}

}  // namespace

int d_level(const LinearOrder& order, const PMapState& state) {
  int v = state.omega_1.value(state.x);
  if (v < 0) throw std::invalid_argument("state site unassigned");
  return order.rank[v] + 1;
}

PMapState p_map_step(const FiniteBoard& board, const ConstraintGraph& graph,
                     const LinearOrder& order, const PMapState& state) {
  validate_state(board, graph, order, state);
  NeighbourSplit split = split_neighbours(board, order, state);
  if (!split.below.empty())
    return PMapState{state.omega_1, state.omega_2, *std::min_element(split.below.begin(),
                                                                     split.below.end())};
  if (!split.above.empty())
    return PMapState{state.omega_2, state.omega_1, *std::min_element(split.above.begin(),
                                                                     split.above.end())};
  return state;
}

bool is_p_fixed_point(const FiniteBoard& board, const ConstraintGraph& graph,
                      const LinearOrder& order, const PMapState& state) {
  validate_state(board, graph, order, state);
  NeighbourSplit split = split_neighbours(board, order, state);
  return split.below.empty() && split.above.empty();
}

std::optional<int> improvable_at_fixed_point(const FiniteBoard& board,
                                             const ConstraintGraph& graph,
                                             const LinearOrder& order, const PMapState& state) {
  if (!is_p_fixed_point(board, graph, order, state))
    throw std::invalid_argument("state is not a fixed point");
  int vx = state.omega_1.value(state.x);
  for (int r = graph.size() - 1; r > order.rank[vx]; --r) {
    int u = order.by_rank[r];
    bool ok = true;
    for (int y : board.neighbors(state.x))
      if (!graph.adjacent(u, state.omega_1.value(y))) {
        ok = false;
        break;
      }
    if (ok) return u;  // total + locally admissible = a point on a finite board
  }
  return std::nullopt;
}

}  // namespace homlab
