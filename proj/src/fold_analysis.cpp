#include "homlab/fold_analysis.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace homlab {

namespace {

std::vector<std::uint64_t> adjacency_masks(const ConstraintGraph& h) {
  std::vector<std::uint64_t> masks(h.size());
  for (int v = 0; v < h.size(); ++v) masks[v] = h.adjacency_mask(v);
  return masks;
}

std::uint64_t full_mask(int n) {
  return n == 64 ? ~0ULL : ((1ULL << n) - 1);
}

}  // namespace

std::vector<FoldStep> find_folds_alive(const ConstraintGraph& h, std::uint64_t alive) {
  if (std::popcount(alive) < 2)
    throw std::invalid_argument("folds need at least two alive vertices");
  auto masks = adjacency_masks(h);
  std::vector<FoldStep> out;
  for (int u = 0; u < h.size(); ++u) {
    if (!(alive >> u & 1)) continue;
    std::uint64_t nu = masks[u] & alive;
    for (int v = 0; v < h.size(); ++v) {
      if (v == u || !(alive >> v & 1)) continue;
      if ((nu & ~(masks[v] & alive)) == 0) out.push_back({u, v});
    }
  }
  return out;
}

std::vector<FoldStep> find_folds(const ConstraintGraph& h) {
  return find_folds_alive(h, full_mask(h.size()));
}

namespace {

// Memoized DFS over alive sets. memo: alive-mask -> dismantlable down to one
// vertex. Expansion budget counts memo insertions.
struct FoldSearch {
  const ConstraintGraph& h;
  std::vector<std::uint64_t> masks;
  std::unordered_map<std::uint64_t, bool> memo;
  long budget;
  bool budget_ok = true;

  FoldSearch(const ConstraintGraph& g, long b) : h(g), masks(adjacency_masks(g)), budget(b) {}

  bool reducible(std::uint64_t alive, std::vector<FoldStep>* path) {
    if (std::popcount(alive) == 1) return true;
    auto it = memo.find(alive);
    if (it != memo.end() && !path) return it->second;
    if (--budget < 0) {
      budget_ok = false;
      return false;
    }
    bool any = false;
    for (int u = 0; u < h.size() && !any; ++u) {
      if (!(alive >> u & 1)) continue;
      std::uint64_t nu = masks[u] & alive;
      for (int v = 0; v < h.size(); ++v) {
        if (v == u || !(alive >> v & 1)) continue;
        if ((nu & ~(masks[v] & alive)) != 0) continue;
        if (reducible(alive & ~(1ULL << u), path)) {
          if (path) path->push_back({u, v});
          any = true;
          break;
        }
        if (!budget_ok) return false;
      }
    }
    if (budget_ok || any) memo[alive] = any;
    return any;
  }

  // All singletons reachable from the full set.
  std::uint64_t reachable_terminals(std::uint64_t alive) {
    if (std::popcount(alive) == 1) return alive;
    auto it = term_memo.find(alive);
    if (it != term_memo.end()) return it->second;
    if (--budget < 0) {
      budget_ok = false;
      return 0;
    }
    std::uint64_t terms = 0;
    for (const auto& f : find_folds_alive(h, alive)) {
      terms |= reachable_terminals(alive & ~(1ULL << f.folded));
      if (!budget_ok) break;
    }
    if (budget_ok) term_memo[alive] = terms;
    return terms;
  }

  std::unordered_map<std::uint64_t, std::uint64_t> term_memo;
};

}  // namespace

bool exhaustive_dismantlable(const ConstraintGraph& h, long budget, bool* complete) {
  if (h.size() == 1) {
    if (complete) *complete = true;
    return true;
  }
  FoldSearch search(h, budget);
  bool ok = search.reducible(full_mask(h.size()), nullptr);
  if (complete) *complete = search.budget_ok || ok;
  return ok;
}

DismantleResult dismantle(const ConstraintGraph& h) {
  DismantleResult out;
  if (h.size() > 64) throw std::invalid_argument("dismantle supports at most 64 vertices");
  std::uint64_t alive = full_mask(h.size());
  std::vector<FoldStep> steps;
  while (std::popcount(alive) > 1) {
    auto folds = find_folds_alive(h, alive);
    if (folds.empty()) break;
    steps.push_back(folds.front());
    alive &= ~(1ULL << folds.front().folded);
  }
  if (std::popcount(alive) == 1) {
    int terminal = std::countr_zero(alive);
    out.certificate = DismantleCertificate{steps, terminal, h.has_loop(terminal)};
    return out;
  }
  // Greedy died; settle exactly. Greedy order happens to be non-confluent on
  // this input if the full search still succeeds.
  FoldSearch search(h, 1'000'000);
  std::vector<FoldStep> path;
  if (search.reducible(full_mask(h.size()), &path)) {
    std::vector<FoldStep> ordered(path.rbegin(), path.rend());
    std::uint64_t left = full_mask(h.size());
    for (const auto& s : ordered) left &= ~(1ULL << s.folded);
    int terminal = std::countr_zero(left);
    out.certificate = DismantleCertificate{ordered, terminal, h.has_loop(terminal)};
    return out;
  }
  StuckReport stuck;
  for (int v = 0; v < h.size(); ++v)
    if (alive >> v & 1) stuck.stuck_vertices.push_back(v);
  stuck.exhaustive_confirmed = search.budget_ok;
  out.stuck = stuck;
  return out;
}

bool is_dismantlable(const ConstraintGraph& h) { return dismantle(h).dismantlable(); }

bool replay_certificate(const ConstraintGraph& h, const DismantleCertificate& cert) {
  if (h.size() > 64) return false;
  if (static_cast<int>(cert.steps.size()) != h.size() - 1) return false;
  auto masks = adjacency_masks(h);
  std::uint64_t alive = full_mask(h.size());
  for (const auto& s : cert.steps) {
    if (s.folded < 0 || s.folded >= h.size() || s.absorber < 0 || s.absorber >= h.size())
      return false;
    if (s.folded == s.absorber) return false;
    if (!(alive >> s.folded & 1) || !(alive >> s.absorber & 1)) return false;
    std::uint64_t nu = masks[s.folded] & alive;
    if ((nu & ~(masks[s.absorber] & alive)) != 0) return false;
    alive &= ~(1ULL << s.folded);
  }
  if (alive != (1ULL << cert.terminal)) return false;
  return cert.terminal_looped == h.has_loop(cert.terminal);
}

PersistentResult persistent_vertices(const ConstraintGraph& h, long budget) {
  PersistentResult out;
  if (h.size() > 64) throw std::invalid_argument("persistent search supports at most 64 vertices");
  if (h.size() == 1) {
    if (h.has_loop(0)) out.vertices.push_back(0);
    return out;
  }
  FoldSearch search(h, budget);
  std::uint64_t terms = search.reachable_terminals(full_mask(h.size()));
  out.complete = search.budget_ok;
  out.expansions = budget - search.budget;
  for (int v = 0; v < h.size(); ++v)
    if ((terms >> v & 1) && h.has_loop(v)) out.vertices.push_back(v);
  return out;
}

}  // namespace homlab
