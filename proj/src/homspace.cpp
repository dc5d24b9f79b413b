#include "homlab/homspace.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace homlab {

SiteSet Configuration::shape() const {
  SiteSet out;
  for (int i = 0; i < size(); ++i)
    if (values_[i] >= 0) out.push_back(i);
  return out;
}

int Configuration::assigned_count() const {
  int c = 0;
  for (int v : values_)
    if (v >= 0) ++c;
  return c;
}

Configuration Configuration::restricted_to(const SiteSet& sites) const {
  Configuration out(size());
  for (int s : sites) out.values_[s] = values_.at(s);
  return out;
}

Configuration Configuration::merge(const Configuration& a, const Configuration& b) {
  if (a.size() != b.size()) throw std::invalid_argument("merge needs equal-size boards");
  Configuration out = a;
  for (int i = 0; i < b.size(); ++i) {
    if (b.values_[i] < 0) continue;
    if (out.values_[i] >= 0 && out.values_[i] != b.values_[i])
      throw std::invalid_argument("configurations conflict at site " + std::to_string(i));
    out.values_[i] = b.values_[i];
  }
  return out;
}

bool Configuration::agrees_with(const Configuration& other) const {
  if (size() != other.size()) return false;
  for (int i = 0; i < size(); ++i)
    if (values_[i] >= 0 && other.values_[i] >= 0 && values_[i] != other.values_[i]) return false;
  return true;
}

bool is_locally_admissible(const FiniteBoard& board, const ConstraintGraph& graph,
                           const Configuration& config) {
  if (config.size() != board.size())
    throw std::invalid_argument("configuration does not match the board");
  for (int x = 0; x < board.size(); ++x) {
    int vx = config.value(x);
    if (vx < 0) continue;
    if (vx >= graph.size()) throw std::invalid_argument("vertex index out of range");
    for (int y : board.neighbors(x)) {
      if (y < x) continue;
      int vy = config.value(y);
      if (vy >= 0 && !graph.adjacent(vx, vy)) return false;
    }
  }
  return true;
}

namespace {

std::uint64_t full_domain(int n) { return n == 64 ? ~0ULL : ((1ULL << n) - 1); }

// Arc-consistent backtracking over the target sites; exact, deterministic.
struct Csp {
  const FiniteBoard& board;
  const ConstraintGraph& graph;
  std::vector<std::uint64_t> adj_mask;
  std::vector<char> in_target;
  std::vector<int> target;
  long nodes = 0;
  long budget;
  const std::vector<int>* value_order = nullptr;  // optional permutation of H

  Csp(const FiniteBoard& b, const ConstraintGraph& g, const SiteSet& tgt, long node_budget)
      : board(b), graph(g), budget(node_budget) {
    if (g.size() > 64)
      throw std::invalid_argument("extension search supports at most 64 graph vertices");
    adj_mask.resize(g.size());
    for (int v = 0; v < g.size(); ++v) adj_mask[v] = g.adjacency_mask(v);
    in_target.assign(b.size(), 0);
    target = tgt;
    for (int s : tgt) in_target.at(s) = 1;
  }

  std::uint64_t support(std::uint64_t dom) const {
    std::uint64_t s = 0;
    while (dom) {
      int v = std::countr_zero(dom);
      dom &= dom - 1;
      s |= adj_mask[v];
    }
    return s;
  }

  bool propagate(std::vector<std::uint64_t>& dom, std::deque<int> queue) const {
    std::vector<char> queued(board.size(), 0);
    for (int x : queue) queued[x] = 1;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      queued[x] = 0;
      std::uint64_t sup = support(dom[x]);
      for (int y : board.neighbors(x)) {
        if (!in_target[y]) continue;
        std::uint64_t nd = dom[y] & sup;
        if (nd != dom[y]) {
          if (nd == 0) return false;
          dom[y] = nd;
          if (!queued[y]) {
            queued[y] = 1;
            queue.push_back(y);
          }
        }
      }
    }
    return true;
  }

  std::optional<std::vector<std::uint64_t>> initial_domains(const Configuration& base) {
    std::vector<std::uint64_t> dom(board.size(), 0);
    std::uint64_t full = full_domain(graph.size());
    for (int s : target) dom[s] = full;
    for (int s = 0; s < board.size(); ++s) {
      if (!base.assigned(s)) continue;
      if (!in_target[s])
        throw std::invalid_argument("configuration shape must lie inside the target");
      int v = base.value(s);
      if (v >= graph.size()) throw std::invalid_argument("vertex index out of range");
      dom[s] = 1ULL << v;
    }
    std::deque<int> all(target.begin(), target.end());
    if (!propagate(dom, std::move(all))) return std::nullopt;
    return dom;
  }

  template <typename Sink>
  EnumOutcome search(std::vector<std::uint64_t>& dom, const Sink& sink) {
    // MRV site selection, lowest index breaking ties.
    int best = -1, best_count = 65;
    for (int s : target) {
      int c = std::popcount(dom[s]);
      if (c > 1 && c < best_count) {
        best_count = c;
        best = s;
      }
    }
    if (best < 0) {
      Configuration solution(board.size());
      for (int s : target) solution.set(s, std::countr_zero(dom[s]));
      return sink(solution) ? EnumOutcome::Complete : EnumOutcome::StoppedByCallback;
    }
    std::uint64_t options = dom[best];
    auto try_value = [&](int v) -> std::optional<EnumOutcome> {
      if (!(options >> v & 1)) return std::nullopt;
      if (++nodes > budget) return EnumOutcome::BudgetExceeded;
      std::vector<std::uint64_t> child = dom;
      child[best] = 1ULL << v;
      if (!propagate(child, {best})) return std::nullopt;
      EnumOutcome sub = search(child, sink);
      if (sub != EnumOutcome::Complete) return sub;
      return std::nullopt;
    };
    if (value_order) {
      for (int v : *value_order)
        if (auto stop = try_value(v)) return *stop;
    } else {
      std::uint64_t rest = options;
      while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        if (auto stop = try_value(v)) return *stop;
      }
    }
    return EnumOutcome::Complete;
  }
};

}  // namespace

EnumOutcome for_each_extension(const FiniteBoard& board, const ConstraintGraph& graph,
                               const Configuration& config, const SiteSet& target,
                               const std::function<bool(const Configuration&)>& on_solution,
                               long node_budget) {
  Csp csp(board, graph, target, node_budget);
  auto dom = csp.initial_domains(config);
  if (!dom) return EnumOutcome::Complete;  // no solutions at all
  return csp.search(*dom, on_solution);
}

std::optional<Configuration> extend(const FiniteBoard& board, const ConstraintGraph& graph,
                                    const Configuration& config, const SiteSet& target) {
  std::optional<Configuration> found;
  auto outcome = for_each_extension(
      board, graph, config, target,
      [&](const Configuration& sol) {
        found = sol;
        return false;
      });
  if (outcome == EnumOutcome::BudgetExceeded && !found)
    throw BudgetExceeded("extension search budget exceeded");
  return found;
}

std::optional<Configuration> extend_all(const FiniteBoard& board, const ConstraintGraph& graph,
                                        const Configuration& config) {
  SiteSet all(board.size());
  for (int i = 0; i < board.size(); ++i) all[i] = i;
  return extend(board, graph, config, all);
}

bool is_globally_admissible(const FiniteBoard& board, const ConstraintGraph& graph,
                            const Configuration& config) {
  return extend_all(board, graph, config).has_value();
}

std::optional<Configuration> extend_radius(const FiniteBoard& board, const ConstraintGraph& graph,
                                           const Configuration& config, int radius) {
  return extend(board, graph, config, board.neighborhood(config.shape(), radius));
}

std::vector<Configuration> language(const FiniteBoard& board, const ConstraintGraph& graph,
                                    const SiteSet& a, long budget) {
  std::vector<Configuration> out;
  long checks = 0;
  // Candidates by backtracking over the shape (internal edges pruned early),
  // then the exact global test.
  Configuration partial(board.size());
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == a.size()) {
      ++checks;
      if (checks > budget) throw BudgetExceeded("language enumeration budget exceeded");
      if (is_globally_admissible(board, graph, partial)) out.push_back(partial);
      return;
    }
    int site = a[idx];
    for (int v = 0; v < graph.size(); ++v) {
      bool ok = true;
      for (int y : board.neighbors(site)) {
        int vy = partial.value(y);
        if (vy >= 0 && site_set_contains(a, y) && !graph.adjacent(v, vy)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      partial.set(site, v);
      self(self, idx + 1);
      partial.unset(site);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

PointSet enumerate_points(const FiniteBoard& board, const ConstraintGraph& graph,
                          long max_points, long node_budget) {
  PointSet out;
  SiteSet all(board.size());
  for (int i = 0; i < board.size(); ++i) all[i] = i;
  auto outcome = for_each_extension(
      board, graph, Configuration(board.size()), all,
      [&](const Configuration& sol) {
        out.points.push_back(sol);
        return static_cast<long>(out.points.size()) < max_points;
      },
      node_budget);
  out.complete = outcome == EnumOutcome::Complete;
  std::sort(out.points.begin(), out.points.end());
  return out;
}

std::optional<Configuration> extend_random(const FiniteBoard& board, const ConstraintGraph& graph,
                                           const Configuration& config, const SiteSet& target,
                                           SplitRng& rng) {
  std::vector<int> order(graph.size());
  for (int i = 0; i < graph.size(); ++i) order[i] = i;
  for (int i = graph.size() - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  Csp csp(board, graph, target, 20'000'000);
  csp.value_order = &order;
  auto dom = csp.initial_domains(config);
  if (!dom) return std::nullopt;
  std::optional<Configuration> found;
  csp.search(*dom, [&](const Configuration& sol) {
    found = sol;
    return false;
  });
  return found;
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Holds: return "holds";
    case VerdictStatus::Fails: return "fails";
    default: return "unknown";
  }
}

// ---------------------------------------------------------------------------
// Mixing checks.

namespace {

// Enumerate subsets of sites with the given maximum size, canonical order.
void enumerate_shapes(int n_sites, int max_size, const std::function<bool(const SiteSet&)>& emit) {
  SiteSet shape;
  auto rec = [&](auto&& self, int start) -> bool {
    if (!shape.empty() && !emit(shape)) return false;
    if (static_cast<int>(shape.size()) == max_size) return true;
    for (int s = start; s < n_sites; ++s) {
      shape.push_back(s);
      bool keep = self(self, s + 1);
      shape.pop_back();
      if (!keep) return false;
    }
    return true;
  };
  rec(rec, 0);
}

struct CylinderTester {
  const FiniteBoard& board;
  const ConstraintGraph& graph;
  long budget;
  long checks = 0;
  bool exhausted = false;

  bool admissible(const Configuration& c) {
    if (++checks > budget) {
      exhausted = true;
      throw BudgetExceeded("mixing search budget exceeded");
    }
    return is_globally_admissible(board, graph, c);
  }
};

}  // namespace

MixingVerdict check_strong_irreducibility(const FiniteBoard& board, const ConstraintGraph& graph,
                                          int gap, const MixingOptions& options) {
  MixingVerdict verdict;
  verdict.property = "strong irreducibility";
  verdict.gap = gap;
  verdict.bounds.description =
      "shapes up to " + std::to_string(options.max_shape) + " site(s), exact cylinder tests";
  CylinderTester tester{board, graph, options.budget};
  try {
    std::vector<SiteSet> shapes;
    enumerate_shapes(board.size(), options.max_shape, [&](const SiteSet& s) {
      shapes.push_back(s);
      return true;
    });
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      for (std::size_t j = i; j < shapes.size(); ++j) {
        const SiteSet& a = shapes[i];
        const SiteSet& b = shapes[j];
        if (!site_set_intersection(a, b).empty()) continue;
        auto d = board.distance(a, b);
        if (d && *d < gap) continue;
        auto la = language(board, graph, a, options.budget);
        auto lb = language(board, graph, b, options.budget);
        tester.checks += static_cast<long>(la.size() + lb.size());
        for (const auto& alpha : la)
          for (const auto& beta : lb) {
            Configuration joint = Configuration::merge(alpha, beta);
            if (!tester.admissible(joint)) {
              verdict.status = VerdictStatus::Fails;
              verdict.counterexample =
                  MixingCounterexample{alpha, Configuration(board.size()), beta};
              verdict.bounds.checks = tester.checks;
              return verdict;
            }
          }
      }
    }
    verdict.status = VerdictStatus::Holds;
  } catch (const BudgetExceeded&) {
    verdict.status = VerdictStatus::Unknown;
    verdict.bounds.budget_exhausted = true;
  }
  verdict.bounds.checks = tester.checks;
  return verdict;
}

namespace {

// Values compatible with joint cylinders: candidate σ plus a single site
// assignment. Tests [σ+a@x] ≠ ∅, [σ+b@y] ≠ ∅, [σ+a@x+b@y] = ∅.
bool tssm_counterexample_at(CylinderTester& tester, const Configuration& sigma, int x, int y,
                            MixingVerdict& verdict) {
  const ConstraintGraph& graph = tester.graph;
  const FiniteBoard& board = tester.board;
  std::vector<int> okx, oky;
  for (int v = 0; v < graph.size(); ++v) {
    Configuration c = sigma;
    c.set(x, v);
    if (is_locally_admissible(board, graph, c) && tester.admissible(c)) okx.push_back(v);
  }
  if (okx.empty()) return false;
  for (int v = 0; v < graph.size(); ++v) {
    Configuration c = sigma;
    c.set(y, v);
    if (is_locally_admissible(board, graph, c) && tester.admissible(c)) oky.push_back(v);
  }
  if (oky.empty()) return false;
  for (int a : okx)
    for (int b : oky) {
      Configuration joint = sigma;
      joint.set(x, a);
      joint.set(y, b);
      if (!is_locally_admissible(board, graph, joint)) {
        // Locally inadmissible joins are ruled out only when x ~ y, which the
        // gap excludes; keep the guard for gap 0 calls.
        continue;
      }
      if (!tester.admissible(joint)) {
        Configuration alpha(board.size()), beta(board.size());
        alpha.set(x, a);
        beta.set(y, b);
        verdict.status = VerdictStatus::Fails;
        verdict.counterexample = MixingCounterexample{alpha, sigma, beta};
        return true;
      }
    }
  return false;
}

// Connected shapes within `window`, size-bounded, each emitted once
// (anchored at its smallest site). Emission order: by anchor, then growth.
void connected_shapes_in_window(const FiniteBoard& board, const SiteSet& window, int max_size,
                                const std::function<bool(const SiteSet&)>& emit) {
  std::vector<char> in_window(board.size(), 0);
  for (int s : window) in_window[s] = 1;
  for (std::size_t a = 0; a < window.size(); ++a) {
    int anchor = window[a];
    // Grow connected sets containing `anchor` using only sites > anchor.
    SiteSet shape{anchor};
    std::vector<int> frontier;
    auto rec = [&](auto&& self, std::vector<int> candidates, std::size_t from) -> bool {
      if (!emit(make_site_set(shape))) return false;
      if (static_cast<int>(shape.size()) == max_size) return true;
      for (std::size_t i = from; i < candidates.size(); ++i) {
        int s = candidates[i];
        shape.push_back(s);
        std::vector<int> next = candidates;
        for (int y : board.neighbors(s))
          if (in_window[y] && y > anchor && !std::count(next.begin(), next.end(), y) &&
              !std::count(shape.begin(), shape.end(), y))
            next.push_back(y);
        if (!self(self, next, i + 1)) return false;
        shape.pop_back();
      }
      return true;
    };
    std::vector<int> init;
    for (int y : board.neighbors(anchor))
      if (in_window[y] && y > anchor) init.push_back(y);
    if (!rec(rec, init, 0)) return;
  }
}

// Locally admissible value assignments on a shape (edges inside the shape).
void admissible_values_on_shape(const FiniteBoard& board, const ConstraintGraph& graph,
                                const SiteSet& shape,
                                const std::function<bool(const Configuration&)>& emit) {
  Configuration partial(board.size());
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (stop) return;
    if (idx == shape.size()) {
      if (!emit(partial)) stop = true;
      return;
    }
    int site = shape[idx];
    for (int v = 0; v < graph.size() && !stop; ++v) {
      bool ok = true;
      for (int y : board.neighbors(site)) {
        int vy = partial.value(y);
        if (vy >= 0 && !graph.adjacent(v, vy)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      partial.set(site, v);
      self(self, idx + 1);
      partial.unset(site);
    }
  };
  rec(rec, 0);
}

// Channel patterns on grid boards: walls three rows/columns/diagonal offsets
// apart with 1- or 2-periodic wall values, probed at the ends of the enclosed
// channel. These reach the disconnected-σ counterexamples that generic
// connected-shape enumeration cannot.
struct ChannelCandidate {
  Configuration sigma;
  int x = -1;
  int y = -1;
};

void grid_channel_candidates(const FiniteBoard& board, const ConstraintGraph& graph,
                             const BoxGeometry& geo, int gap,
                             const std::function<bool(const ChannelCandidate&)>& emit) {
  int w = geo.width, h = geo.height;
  int n_h = graph.size();
  // Wall value patterns: constant (needs a loop) or 2-periodic (needs an
  // edge between the two values when wall sites are adjacent; true diagonals
  // have no internal adjacency, so all pairs are allowed there).
  auto wall_patterns = [&](bool sites_adjacent) {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < n_h; ++v) {
      if (!sites_adjacent || graph.has_loop(v)) out.emplace_back(v, v);
      for (int u = 0; u < n_h; ++u)
        if (u != v && (!sites_adjacent || graph.adjacent(v, u))) out.emplace_back(v, u);
    }
    return out;
  };

  // Row channels: walls at rows y0 and y0+3, interior rows y0+1, y0+2,
  // spanning the full width. Probes at opposite ends of the interior rows.
  if (h >= 4 && w >= 2) {
    auto pats = wall_patterns(true);
    for (int y0 = 0; y0 + 3 < h; ++y0) {
      for (auto [b0, b1] : pats) {
        for (auto [t0, t1] : pats) {
          ChannelCandidate cand;
          cand.sigma = Configuration(board.size());
          for (int x = 0; x < w; ++x) {
            cand.sigma.set(geo.site(x, y0), x % 2 ? b1 : b0);
            cand.sigma.set(geo.site(x, y0 + 3), x % 2 ? t1 : t0);
          }
          for (int ry1 : {y0 + 1, y0 + 2})
            for (int ry2 : {y0 + 1, y0 + 2}) {
              cand.x = geo.site(0, ry1);
              cand.y = geo.site(w - 1, ry2);
              int dist = (w - 1) + std::abs(ry1 - ry2);
              if (dist < gap) continue;
              if (!emit(cand)) return;
            }
        }
      }
    }
  }
  // Column channels: same, transposed.
  if (w >= 4 && h >= 2) {
    auto pats = wall_patterns(true);
    for (int x0 = 0; x0 + 3 < w; ++x0) {
      for (auto [b0, b1] : pats) {
        for (auto [t0, t1] : pats) {
          ChannelCandidate cand;
          cand.sigma = Configuration(board.size());
          for (int y = 0; y < h; ++y) {
            cand.sigma.set(geo.site(x0, y), y % 2 ? b1 : b0);
            cand.sigma.set(geo.site(x0 + 3, y), y % 2 ? t1 : t0);
          }
          for (int rx1 : {x0 + 1, x0 + 2})
            for (int rx2 : {x0 + 1, x0 + 2}) {
              cand.x = geo.site(rx1, 0);
              cand.y = geo.site(rx2, h - 1);
              int dist = (h - 1) + std::abs(rx1 - rx2);
              if (dist < gap) continue;
              if (!emit(cand)) return;
            }
        }
      }
    }
  }
  // Diagonal channels: true diagonals y = x + c and y = x + c + 3 (no
  // internal adjacency), with the interior zigzag probed at its two ends.
  // Walls must extend one step past the probes to pin the interior.
  if (w >= 4 && h >= 6) {
    auto pats = wall_patterns(false);
    for (int c = 1; c + 3 < h; ++c) {
      // Lower diagonal passes (k, k+c) for k in [0, kmax_low].
      int kmax_low = std::min(w - 1, h - 1 - c);
      int kmax_high = std::min(w - 1, h - 4 - c);
      // Interior u-sites (k, k+c+1) need wall sites at k and k+1 below and
      // the w-sites (k, k+c+2) need wall sites at k-1 and k above.
      int u_lo = 1, u_hi = std::min({kmax_low - 1, kmax_high, w - 1});
      if (u_hi - u_lo < 1) continue;
      for (auto [l0, l1] : pats) {
        for (auto [h0, h1] : pats) {
          ChannelCandidate cand;
          cand.sigma = Configuration(board.size());
          for (int k = 0; k <= kmax_low; ++k)
            cand.sigma.set(geo.site(k, k + c), k % 2 ? l1 : l0);
          for (int k = 0; k <= kmax_high; ++k)
            cand.sigma.set(geo.site(k, k + c + 3), k % 2 ? h1 : h0);
          cand.x = geo.site(u_lo, u_lo + c + 1);
          cand.y = geo.site(u_hi, u_hi + c + 1);
          int dist = 2 * (u_hi - u_lo);
          if (dist < gap) continue;
          if (!emit(cand)) return;
        }
      }
    }
  }
}

}  // namespace

MixingVerdict check_TSSM(const FiniteBoard& board, const ConstraintGraph& graph, int gap,
                         const MixingOptions& options) {
  MixingVerdict verdict;
  verdict.property = "topological strong spatial mixing";
  verdict.gap = gap;
  verdict.bounds.description =
      "singleton probes; generic shapes <= " + std::to_string(options.sigma_max_size) +
      " sites, <= " + std::to_string(options.sigma_max_components) +
      " components, window radius " + std::to_string(options.window_radius) +
      (options.seed_channel_patterns ? "; grid channel patterns" : "");
  CylinderTester tester{board, graph, options.budget};
  try {
    // Grid channel patterns first: they reach the long disconnected shapes.
    if (options.seed_channel_patterns) {
      if (auto geo = detect_box_geometry(board)) {
        bool failed = false;
        grid_channel_candidates(board, graph, *geo, gap, [&](const ChannelCandidate& cand) {
          if (!is_locally_admissible(board, graph, cand.sigma)) return true;
          if (tssm_counterexample_at(tester, cand.sigma, cand.x, cand.y, verdict)) {
            failed = true;
            return false;
          }
          return true;
        });
        if (failed) {
          verdict.bounds.checks = tester.checks;
          return verdict;
        }
      }
    }
    // Generic enumeration: site pairs, then σ shapes of increasing size in
    // the window around the pair (size 0 = plain gluing of the two probes).
    for (int x = 0; x < board.size(); ++x) {
      for (int y = x + 1; y < board.size(); ++y) {
        auto d = board.distance(x, y);
        if (d && *d < gap) continue;
        Configuration empty_sigma(board.size());
        if (tssm_counterexample_at(tester, empty_sigma, x, y, verdict)) {
          verdict.bounds.checks = tester.checks;
          return verdict;
        }
        SiteSet window = board.neighborhood(SiteSet{x, y}, options.window_radius);
        window = site_set_difference(window, SiteSet{x, y});
        // Single connected pieces, then pairs of disjoint pieces.
        std::vector<SiteSet> pieces;
        connected_shapes_in_window(board, window, options.sigma_max_size, [&](const SiteSet& s) {
          pieces.push_back(s);
          return true;
        });
        bool failed = false;
        auto test_shape = [&](const SiteSet& shape) {
          admissible_values_on_shape(board, graph, shape, [&](const Configuration& sigma) {
            if (tssm_counterexample_at(tester, sigma, x, y, verdict)) {
              failed = true;
              return false;
            }
            return true;
          });
          return !failed;
        };
        for (const auto& s : pieces)
          if (!test_shape(s)) break;
        if (!failed && options.sigma_max_components >= 2) {
          for (std::size_t i = 0; i < pieces.size() && !failed; ++i)
            for (std::size_t j = i + 1; j < pieces.size() && !failed; ++j) {
              if (static_cast<int>(pieces[i].size() + pieces[j].size()) >
                  options.sigma_max_size)
                continue;
              if (!site_set_intersection(pieces[i], pieces[j]).empty()) continue;
              test_shape(site_set_union(pieces[i], pieces[j]));
            }
        }
        if (failed) {
          verdict.bounds.checks = tester.checks;
          return verdict;
        }
      }
    }
    verdict.status = VerdictStatus::Holds;
  } catch (const BudgetExceeded&) {
    verdict.status = VerdictStatus::Unknown;
    verdict.bounds.budget_exhausted = true;
  }
  verdict.bounds.checks = tester.checks;
  return verdict;
}

MixingVerdict check_SSF(const FiniteBoard& board, const ConstraintGraph& graph) {
  MixingVerdict verdict;
  verdict.property = "single-site fillability";
  verdict.gap = 2;
  verdict.bounds.description = "exact over all sites, boundary subsets, and patterns";
  long checks = 0;
  for (int x = 0; x < board.size(); ++x) {
    const auto& nbrs = board.neighbors(x);
    int k = static_cast<int>(nbrs.size());
    for (std::uint32_t subset = 0; subset < (1u << k); ++subset) {
      SiteSet shape;
      for (int i = 0; i < k; ++i)
        if (subset >> i & 1) shape.push_back(nbrs[i]);
      shape = make_site_set(shape);
      bool failed = false;
      admissible_values_on_shape(board, graph, shape, [&](const Configuration& beta) {
        ++checks;
        for (int v = 0; v < graph.size(); ++v) {
          bool fits = true;
          for (int s : shape)
            if (!graph.adjacent(v, beta.value(s))) {
              fits = false;
              break;
            }
          if (fits) return true;
        }
        verdict.ssf_failure = SsfFailure{x, beta};
        failed = true;
        return false;
      });
      if (failed) {
        verdict.status = VerdictStatus::Fails;
        verdict.bounds.checks = checks;
        return verdict;
      }
    }
  }
  verdict.status = VerdictStatus::Holds;
  verdict.bounds.checks = checks;
  return verdict;
}

}  // namespace homlab
