#include "homlab/gibbs_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "homlab/umc_engine.hpp"

namespace homlab {

void Interaction::set_edge(int u, int v, double e) {
  edge_table.at(static_cast<std::size_t>(u) * size() + v) = e;
  edge_table.at(static_cast<std::size_t>(v) * size() + u) = e;
}

void Interaction::validate(const ConstraintGraph& graph) const {
  if (size() != graph.size() ||
      edge_table.size() != static_cast<std::size_t>(graph.size()) * graph.size())
    throw std::invalid_argument("interaction tables do not match the graph");
  for (double e : vertex_energy)
    if (!(e <= 0) || !std::isfinite(e))
      throw std::invalid_argument("vertex energies must be finite and non-positive");
  for (auto [u, v] : graph.edges()) {
    double e = edge(u, v);
    if (!(e <= 0) || !std::isfinite(e))
      throw std::invalid_argument("edge energies must be finite and non-positive");
    if (edge(u, v) != edge(v, u)) throw std::invalid_argument("edge energies must be symmetric");
  }
}

Interaction Interaction::zero(const ConstraintGraph& graph) {
  Interaction phi;
  phi.vertex_energy.assign(graph.size(), 0.0);
  phi.edge_table.assign(static_cast<std::size_t>(graph.size()) * graph.size(), 0.0);
  return phi;
}

Interaction Interaction::ferro_potts(const ConstraintGraph& graph, double beta) {
  if (beta < 0) throw std::invalid_argument("coupling must be non-negative");
  Interaction phi = zero(graph);
  for (int v = 0; v < graph.size(); ++v)
    if (graph.has_loop(v)) phi.set_edge(v, v, -beta);
  return phi;
}

Interaction Interaction::antiferro_potts(const ConstraintGraph& graph, double beta) {
  if (beta < 0) throw std::invalid_argument("coupling must be non-negative");
  Interaction phi = zero(graph);
  for (auto [u, v] : graph.edges())
    if (u != v) phi.set_edge(u, v, -beta);
  return phi;
}

Interaction Interaction::hard_core(const ConstraintGraph& graph, double beta) {
  Interaction phi = zero(graph);
  auto occupied = graph.find("1");
  auto vacant = graph.find("0");
  if (!occupied || !vacant)
    throw std::invalid_argument("hard-core interaction needs vertices named 0 and 1");
  if (beta >= 0)
    phi.vertex_energy[*occupied] = -beta;
  else
    phi.vertex_energy[*vacant] = beta;  // same weights up to a constant shift
  return phi;
}

Interaction Interaction::widom_rowlinson(const ConstraintGraph& graph, double beta, int center) {
  if (beta < 0) throw std::invalid_argument("coupling must be non-negative");
  if (center < 0 || center >= graph.size()) throw std::invalid_argument("centre out of range");
  Interaction phi = zero(graph);
  for (int v = 0; v < graph.size(); ++v)
    if (v != center) phi.vertex_energy[v] = -beta;
  return phi;
}

Interaction Interaction::vertex_activity(const ConstraintGraph& graph, int v_star, double lambda) {
  if (!(lambda > 1)) throw std::invalid_argument("activity requires lambda > 1");
  if (v_star < 0 || v_star >= graph.size())
    throw std::invalid_argument("distinguished vertex out of range");
  Interaction phi = zero(graph);
  phi.vertex_energy[v_star] = -std::log(lambda);
  return phi;
}

Interaction Interaction::rank_activity(const ConstraintGraph& graph, const LinearOrder& order,
                                       double lambda) {
  if (!(lambda > 1)) throw std::invalid_argument("activity requires lambda > 1");
  if (static_cast<int>(order.by_rank.size()) != graph.size())
    throw std::invalid_argument("order does not cover the graph");
  Interaction phi = zero(graph);
  for (int v = 0; v < graph.size(); ++v)
    phi.vertex_energy[v] = -(order.rank[v] + 1) * std::log(lambda);
  return phi;
}

Interaction parse_interaction_text(const ConstraintGraph& graph, const std::string& text) {
  Interaction phi = Interaction::zero(graph);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("interaction line " + std::to_string(line_no) + ": " + what);
    };
    if (kind == "vertex") {
      std::string name;
      double e;
      if (!(ls >> name >> e)) fail("expected: vertex <v> <energy>");
      auto v = graph.find(name);
      if (!v) fail("unknown vertex " + name);
      phi.vertex_energy[*v] = e;
    } else if (kind == "edge") {
      std::string pair;
      double e;
      if (!(ls >> pair >> e)) fail("expected: edge <u>-<v> <energy>");
      auto dash = pair.find('-');
      if (dash == std::string::npos) fail("expected u-v");
      auto u = graph.find(pair.substr(0, dash));
      auto v = graph.find(pair.substr(dash + 1));
      if (!u || !v) fail("unknown vertex in " + pair);
      if (!graph.adjacent(*u, *v)) fail(pair + " is not an edge of the graph");
      phi.set_edge(*u, *v, e);
    } else {
      fail("unknown directive " + kind);
    }
  }
  phi.validate(graph);
  return phi;
}

Interaction read_interaction_file(const ConstraintGraph& graph, const std::string& path) {
  return parse_interaction_text(graph, read_text_file(path));
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming log-sum-exp accumulator.
struct LogSum {
  double m = kNegInf;
  double s = 0.0;

  void add(double x) {
    if (x == kNegInf) return;
    if (x <= m) {
      s += std::exp(x - m);
    } else {
      s = s * std::exp(m - x) + 1.0;
      m = x;
    }
  }
  double value() const { return s > 0 ? m + std::log(s) : kNegInf; }
};

// Exact enumeration of the admissible fillings of a region against a pinned
// boundary, with incrementally maintained energy. Interior edges contribute
// when their second endpoint is placed; boundary edges when the region
// endpoint is placed, so each edge is counted exactly once.
struct RegionEnum {
  const FiniteBoard& board;
  const ConstraintGraph& graph;
  const Interaction& phi;
  SiteSet region;
  std::vector<int> pinned;    // per board site, boundary value or -1
  std::vector<char> in_region;

  RegionEnum(const FiniteBoard& b, const ConstraintGraph& g, const Interaction& p,
             const SpecificationQuery& query)
      : board(b), graph(g), phi(p), region(query.region) {
    pinned.assign(b.size(), -1);
    in_region.assign(b.size(), 0);
    for (int s : region) in_region[s] = 1;
    for (int s : board.boundary(region)) pinned[s] = query.boundary.value(s);
  }

  // callback(values over region order, energy); return false to stop.
  template <typename F>
  void run(const F& callback) const {
    std::vector<int> values(region.size(), -1);
    std::vector<int> by_site(board.size(), -1);
    bool stop = false;
    enumerate(0, 0.0, values, by_site, stop, callback);
  }

 private:
  template <typename F>
  void enumerate(std::size_t idx, double e, std::vector<int>& values, std::vector<int>& by_site,
                 bool& stop, const F& callback) const {
    if (stop) return;
    if (idx == region.size()) {
      if (!callback(values, e)) stop = true;
      return;
    }
    int site = region[idx];
    for (int v = 0; v < graph.size(); ++v) {
      double de = phi.vertex(v);
      bool ok = true;
      for (int y : board.neighbors(site)) {
        int w = in_region[y] ? by_site[y] : pinned[y];
        if (w < 0) continue;
        if (!graph.adjacent(v, w)) {
          ok = false;
          break;
        }
        de += phi.edge(v, w);
      }
      if (!ok) continue;
      values[idx] = v;
      by_site[site] = v;
      enumerate(idx + 1, e + de, values, by_site, stop, callback);
      by_site[site] = -1;
      if (stop) return;
    }
    values[idx] = -1;
  }
};

}  // namespace

void validate_query(const FiniteBoard& board, const ConstraintGraph& graph,
                    const SpecificationQuery& query) {
  if (query.region.empty()) throw std::invalid_argument("region must be nonempty");
  for (int s : query.region) {
    if (s < 0 || s >= board.size()) throw std::invalid_argument("region site out of range");
    if (!board.is_interior(s)) throw std::invalid_argument("region must lie in the interior");
  }
  if (query.boundary.size() != board.size())
    throw std::invalid_argument("boundary configuration does not match the board");
  for (int s : board.boundary(query.region)) {
    int v = query.boundary.value(s);
    if (v < 0) throw std::invalid_argument("boundary must assign every site around the region");
    if (v >= graph.size()) throw std::invalid_argument("boundary value out of range");
  }
  // The pinned rim must itself be admissible (edges between boundary sites).
  SiteSet rim = board.boundary(query.region);
  Configuration delta = query.boundary.restricted_to(rim);
  if (!is_locally_admissible(board, graph, delta))
    throw std::invalid_argument("boundary configuration is not admissible");
}

double energy(const FiniteBoard& board, const ConstraintGraph& graph, const Interaction& phi,
              const SpecificationQuery& query, const Configuration& alpha) {
  validate_query(board, graph, query);
  phi.validate(graph);
  for (int s : query.region)
    if (!alpha.assigned(s)) throw std::invalid_argument("filling must assign the whole region");
  std::vector<char> in_region(board.size(), 0);
  for (int s : query.region) in_region[s] = 1;
  double e = 0;
  for (int x : query.region) {
    int vx = alpha.value(x);
    e += phi.vertex(vx);
    for (int y : board.neighbors(x)) {
      int w = in_region[y] ? alpha.value(y) : query.boundary.value(y);
      if (w < 0) throw std::invalid_argument("unassigned neighbour of the region");
      if (!graph.adjacent(vx, w))
        throw std::invalid_argument("filling is inadmissible against the boundary");
      e += in_region[y] ? 0.5 * phi.edge(vx, w) : phi.edge(vx, w);
    }
  }
  return e;
}

double log_partition(const FiniteBoard& board, const ConstraintGraph& graph,
                     const Interaction& phi, const SpecificationQuery& query) {
  validate_query(board, graph, query);
  phi.validate(graph);
  LogSum z;
  RegionEnum(board, graph, phi, query).run([&](const std::vector<int>&, double e) {
    z.add(-e);
    return true;
  });
  if (z.value() == kNegInf) throw std::runtime_error("no admissible filling of the region");
  return z.value();
}

double conditional_marginal(const FiniteBoard& board, const ConstraintGraph& graph,
                            const Interaction& phi, const SpecificationQuery& query,
                            const Configuration& beta) {
  validate_query(board, graph, query);
  phi.validate(graph);
  for (int s : beta.shape())
    if (!site_set_contains(query.region, s))
      throw std::invalid_argument("event pattern must lie inside the region");
  LogSum z, hit;
  RegionEnum re(board, graph, phi, query);
  re.run([&](const std::vector<int>& values, double e) {
    z.add(-e);
    bool agree = true;
    for (std::size_t i = 0; i < re.region.size(); ++i) {
      int want = beta.value(re.region[i]);
      if (want >= 0 && want != values[i]) {
        agree = false;
        break;
      }
    }
    if (agree) hit.add(-e);
    return true;
  });
  if (z.value() == kNegInf) throw std::runtime_error("no admissible filling of the region");
  if (hit.value() == kNegInf) return 0.0;
  return std::exp(hit.value() - z.value());
}

std::size_t MarginalTable::index_of(const Configuration& beta, int h_size) const {
  std::size_t idx = 0;
  for (int s : probe) {
    int v = beta.value(s);
    if (v < 0) throw std::invalid_argument("pattern does not assign every probe site");
    idx = idx * h_size + v;
  }
  return idx;
}

MarginalTable marginal_table(const FiniteBoard& board, const ConstraintGraph& graph,
                             const Interaction& phi, const SpecificationQuery& query,
                             const SiteSet& probe) {
  validate_query(board, graph, query);
  phi.validate(graph);
  for (int s : probe)
    if (!site_set_contains(query.region, s))
      throw std::invalid_argument("probe must lie inside the region");
  std::vector<int> probe_idx;
  for (int s : probe) {
    auto it = std::lower_bound(query.region.begin(), query.region.end(), s);
    probe_idx.push_back(static_cast<int>(it - query.region.begin()));
  }
  std::size_t cells = 1;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    cells *= graph.size();
    if (cells > 1'000'000) throw std::invalid_argument("probe joint table too large");
  }
  std::vector<LogSum> buckets(cells);
  LogSum z;
  RegionEnum(board, graph, phi, query).run([&](const std::vector<int>& values, double e) {
    z.add(-e);
    std::size_t idx = 0;
    for (int pi : probe_idx) idx = idx * graph.size() + values[pi];
    buckets[idx].add(-e);
    return true;
  });
  if (z.value() == kNegInf) throw std::runtime_error("no admissible filling of the region");
  MarginalTable table;
  table.probe = probe;
  table.probabilities.resize(cells, 0.0);
  for (std::size_t i = 0; i < cells; ++i)
    if (buckets[i].value() != kNegInf)
      table.probabilities[i] = std::exp(buckets[i].value() - z.value());
  return table;
}

double lambda0_wsm_log(int h_size, int delta) {
  if (h_size < 1 || delta < 2) throw std::invalid_argument("need |H| >= 1 and delta >= 2");
  return 2 * std::log(static_cast<double>(delta - 1)) +
         2 * std::pow(static_cast<double>(delta), h_size - 1) * std::log(static_cast<double>(h_size));
}

double lambda0_ssm_log(int h_size, int delta, int g) {
  if (h_size < 1 || delta < 2 || g < 0)
    throw std::invalid_argument("need |H| >= 1, delta >= 2, g >= 0");
  return 2 * std::log(static_cast<double>(delta - 1)) +
         2 * std::pow(static_cast<double>(delta), g + 1) * std::log(static_cast<double>(h_size));
}

// ---------------------------------------------------------------------------
// Decay measurement.

namespace {

// All admissible full assignments of the boundary that extend `base`,
// restricted to globally admissible ones (rims of actual points).
std::vector<Configuration> boundary_candidates(const FiniteBoard& board,
                                               const ConstraintGraph& graph,
                                               const DecayInstance& inst,
                                               const DecayOptions& options, bool* sampled) {
  // A default-constructed base means "no pins"; normalize it to board size.
  Configuration base = inst.base.size() == 0 ? Configuration(board.size()) : inst.base;
  if (base.size() != board.size())
    throw std::invalid_argument("instance base does not match the board");
  SiteSet rim = board.boundary(inst.region);
  SiteSet free;
  for (int s : rim)
    if (!base.assigned(s)) free.push_back(s);
  double candidates = std::pow(static_cast<double>(graph.size()), static_cast<double>(free.size()));
  std::vector<Configuration> out;
  if (candidates <= static_cast<double>(options.max_exhaustive)) {
    Configuration delta = base.restricted_to(site_set_intersection(base.shape(), rim));
    auto rec = [&](auto&& self, std::size_t idx) -> void {
      if (idx == free.size()) {
        if (is_globally_admissible(board, graph, delta)) out.push_back(delta);
        return;
      }
      int site = free[idx];
      for (int v = 0; v < graph.size(); ++v) {
        bool ok = true;
        for (int y : board.neighbors(site)) {
          int w = delta.value(y);
          if (w >= 0 && !graph.adjacent(v, w)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        delta.set(site, v);
        self(self, idx + 1);
        delta.unset(site);
      }
    };
    rec(rec, 0);
    return out;
  }
  *sampled = true;
  SplitRng rng(options.seed);
  SiteSet everything(board.size());
  for (int i = 0; i < board.size(); ++i) everything[i] = i;
  Configuration seed_cfg = base.restricted_to(site_set_intersection(base.shape(), rim));
  for (int t = 0; t < options.sample_count; ++t) {
    auto point = extend_random(board, graph, seed_cfg, everything, rng);
    if (point) out.push_back(point->restricted_to(rim));
  }
  if (options.extremes_order) {
    // Greedy extremes: the greatest and least admissible completions.
    for (bool maximal : {true, false}) {
      Configuration cur = seed_cfg;
      bool dead = false;
      for (int s : free) {
        bool placed = false;
        for (int r = 0; r < graph.size() && !placed; ++r) {
          int v = options.extremes_order->by_rank[maximal ? graph.size() - 1 - r : r];
          cur.set(s, v);
          if (is_globally_admissible(board, graph, cur))
            placed = true;
          else
            cur.unset(s);
        }
        if (!placed) {
          dead = true;
          break;
        }
      }
      if (!dead) out.push_back(cur);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

DecayReport measure_decay(const FiniteBoard& board, const ConstraintGraph& graph,
                          const Interaction& phi, DecayMode mode, const DecayGeometry& geometry,
                          const DecayOptions& options) {
  phi.validate(graph);
  DecayReport report;
  report.mode = mode;
  report.geometry = geometry.description;
  for (const DecayInstance& inst : geometry.instances) {
    SiteSet rim = board.boundary(inst.region);
    SiteSet near = site_set_difference(rim, inst.vary);
    std::vector<Configuration> deltas;
    std::vector<std::pair<int, int>> pairs;  // indices into deltas
    if (!inst.explicit_pairs.empty()) {
      for (const auto& [d1, d2] : inst.explicit_pairs) {
        deltas.push_back(d1.restricted_to(rim));
        deltas.push_back(d2.restricted_to(rim));
        pairs.emplace_back(static_cast<int>(deltas.size()) - 2,
                           static_cast<int>(deltas.size()) - 1);
      }
    } else {
      deltas = boundary_candidates(board, graph, inst, options, &report.sampled);
      for (std::size_t i = 0; i < deltas.size(); ++i)
        for (std::size_t j = i + 1; j < deltas.size(); ++j) {
          if (mode == DecayMode::SSM) {
            bool near_agree = true;
            for (int s : near)
              if (deltas[i].value(s) != deltas[j].value(s)) {
                near_agree = false;
                break;
              }
            if (!near_agree) continue;
          }
          pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    std::vector<std::optional<MarginalTable>> tables(deltas.size());
    auto table_of = [&](int i) -> const MarginalTable& {
      if (!tables[i])
        tables[i] = marginal_table(board, graph, phi, {inst.region, deltas[i]}, geometry.probe);
      return *tables[i];
    };
    double tv = 0;
    long used = 0;
    for (auto [i, j] : pairs) {
      SiteSet diff;
      for (int s : rim)
        if (deltas[i].value(s) != deltas[j].value(s)) diff.push_back(s);
      if (diff.empty()) continue;
      auto d = board.distance(geometry.probe, diff);
      if (d && *d < inst.distance) continue;  // disagreement too close for this bucket
      const auto& t1 = table_of(i).probabilities;
      const auto& t2 = table_of(j).probabilities;
      for (std::size_t c = 0; c < t1.size(); ++c)
        tv = std::max(tv, std::abs(t1[c] - t2[c]));
      ++used;
    }
    report.distances.push_back(inst.distance);
    report.tv_values.push_back(tv);
    report.pair_counts.push_back(used);
  }
  // Least-squares exponential fit on the strictly positive TV values.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < report.tv_values.size(); ++i) {
    if (report.tv_values[i] <= 0) continue;
    double x = report.distances[i], y = std::log(report.tv_values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  report.fit_points = n;
  if (n >= 3 && sxx * n - sx * sx > 1e-12) {
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - slope * sx) / n;
    report.fitted_rate = -slope;
    double ss = 0;
    for (std::size_t i = 0; i < report.tv_values.size(); ++i) {
      if (report.tv_values[i] <= 0) continue;
      double r = std::log(report.tv_values[i]) - (intercept + slope * report.distances[i]);
      ss += r * r;
    }
    report.fit_residual = std::sqrt(ss / n);
  }
  return report;
}

DecayGeometry nested_ball_geometry(const FiniteBoard& board, int probe,
                                   const std::vector<int>& distances) {
  DecayGeometry geo;
  geo.description = "nested balls around site " + board.name(probe);
  geo.probe = {probe};
  for (int d : distances) {
    DecayInstance inst;
    inst.region = site_set_intersection(board.neighborhood({probe}, d), board.interior());
    SiteSet rim = board.boundary(inst.region);
    if (rim.empty()) continue;  // ball swallowed the whole board
    auto dist = board.distance(geo.probe, rim);
    inst.distance = dist ? *dist : d + 1;
    inst.vary = rim;
    geo.instances.push_back(std::move(inst));
  }
  return geo;
}

DecayGeometry fixed_region_geometry(const FiniteBoard& board, int probe, int radius,
                                    const std::vector<int>& distances) {
  DecayGeometry geo;
  geo.description =
      "fixed ball of radius " + std::to_string(radius) + " around site " + board.name(probe);
  geo.probe = {probe};
  SiteSet region = site_set_intersection(board.neighborhood({probe}, radius), board.interior());
  SiteSet rim = board.boundary(region);
  for (int d : distances) {
    DecayInstance inst;
    inst.region = region;
    inst.distance = d;
    for (int s : rim) {
      auto dist = board.distance(probe, s);
      if (dist && *dist >= d) inst.vary.push_back(s);
    }
    if (inst.vary.empty()) continue;
    geo.instances.push_back(std::move(inst));
  }
  return geo;
}

// ---------------------------------------------------------------------------
// Tail bounds.

namespace {

TailBoundReport tail_bound_common(const FiniteBoard& board, const ConstraintGraph& graph,
                                  const Interaction& phi, const SpecificationQuery& query,
                                  const SiteSet& probe, double lambda, double rhs_exponent,
                                  const std::vector<int>& reference,
                                  const LinearOrder* order) {
  validate_query(board, graph, query);
  for (int s : probe)
    if (!site_set_contains(query.region, s))
      throw std::invalid_argument("probe must lie inside the region");
  std::vector<int> probe_pos;
  for (int s : probe) {
    auto it = std::lower_bound(query.region.begin(), query.region.end(), s);
    probe_pos.push_back(static_cast<int>(it - query.region.begin()));
  }
  // Weight of fillings by how many probe sites deviate from the reference.
  std::vector<LogSum> by_count(probe.size() + 1);
  LogSum z;
  RegionEnum(board, graph, phi, query).run([&](const std::vector<int>& values, double e) {
    int deviations = 0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
      int got = values[probe_pos[i]];
      int ref = reference[i];
      bool deviates = order ? order->rank[got] < order->rank[ref] : got != ref;
      if (deviates) ++deviations;
    }
    z.add(-e);
    by_count[deviations].add(-e);
    return true;
  });
  if (z.value() == kNegInf) throw std::runtime_error("no admissible filling of the region");

  TailBoundReport report;
  report.lambda = lambda;
  report.holds = true;
  double log_h = std::log(static_cast<double>(graph.size()));
  for (int k = 0; k <= static_cast<int>(probe.size()); ++k) {
    LogSum tail;
    for (int c = k; c <= static_cast<int>(probe.size()); ++c)
      if (by_count[c].value() != kNegInf) tail.add(by_count[c].value());
    double lhs = tail.value() == kNegInf ? kNegInf : tail.value() - z.value();
    double rhs = static_cast<double>(probe.size()) * rhs_exponent * log_h - k * std::log(lambda);
    report.ks.push_back(k);
    report.lhs_log.push_back(lhs);
    report.rhs_log.push_back(rhs);
    if (lhs > rhs + 1e-9) report.holds = false;
  }
  return report;
}

}  // namespace

TailBoundReport check_tail_bound_dismantlable(const FiniteBoard& board,
                                              const ConstraintGraph& graph, int v_star,
                                              double lambda, const SpecificationQuery& query,
                                              const SiteSet& probe) {
  if (!(lambda > 1)) throw std::invalid_argument("tail bound requires lambda > 1");
  // The region must contain the (|H|-2)-neighbourhood of the probe.
  SiteSet needed = board.neighborhood(probe, std::max(0, graph.size() - 2));
  for (int s : needed)
    if (!site_set_contains(query.region, s))
      throw std::invalid_argument("region must contain the (|H|-2)-ball around the probe");
  Interaction phi = Interaction::vertex_activity(graph, v_star, lambda);
  std::vector<int> reference(probe.size(), v_star);
  double exponent = std::pow(static_cast<double>(board.max_degree()), graph.size() - 1);
  auto report = tail_bound_common(board, graph, phi, query, probe, lambda, exponent, reference,
                                  nullptr);
  report.variant = "dismantlable";
  return report;
}

TailBoundReport check_tail_bound_umc(const FiniteBoard& board, const ConstraintGraph& graph,
                                     const LinearOrder& order, int g, double lambda,
                                     const SpecificationQuery& query, const SiteSet& probe) {
  if (!(lambda > 1)) throw std::invalid_argument("tail bound requires lambda > 1");
  if (g < 0) throw std::invalid_argument("distance must be non-negative");
  Interaction phi = Interaction::rank_activity(graph, order, lambda);
  // Reference: the greatest point compatible with the boundary of the region.
  SiteSet rim = board.boundary(query.region);
  Configuration delta = query.boundary.restricted_to(rim);
  Configuration omega_delta = maximal_configuration(board, graph, order, delta).omega;
  std::vector<int> reference;
  for (int s : probe) reference.push_back(omega_delta.value(s));
  double exponent = std::pow(static_cast<double>(board.max_degree()), g + 1);
  auto report =
      tail_bound_common(board, graph, phi, query, probe, lambda, exponent, reference, &order);
  report.variant = "umc";
  return report;
}

// ---------------------------------------------------------------------------
// Worst-case single-site total variation.

QofPiReport q_of_pi(const FiniteBoard& board, const ConstraintGraph& graph,
                    const Interaction& phi, int site, long budget) {
  phi.validate(graph);
  if (site < 0 || site >= board.size()) throw std::invalid_argument("site out of range");
  if (board.degree(site) != board.max_degree())
    throw std::invalid_argument("site must have full degree");
  SiteSet rim = make_site_set(board.neighbors(site));
  std::vector<Configuration> rims = language(board, graph, rim, budget);
  if (rims.empty()) throw std::runtime_error("no admissible boundary around the site");

  // The marginal depends on the rim values only; dedupe by marginal vector.
  std::vector<std::vector<double>> vectors;
  for (const Configuration& delta : rims) {
    SpecificationQuery query{{site}, delta};
    MarginalTable t = marginal_table(board, graph, phi, query, {site});
    vectors.push_back(t.probabilities);
  }
  std::sort(vectors.begin(), vectors.end());
  vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());

  QofPiReport report;
  report.boundary_configs = static_cast<long>(rims.size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      double l1 = 0;
      for (std::size_t v = 0; v < vectors[i].size(); ++v)
        l1 += std::abs(vectors[i][v] - vectors[j][v]);
      report.q_value = std::max(report.q_value, 0.5 * l1);
    }
  report.below_threshold = report.q_value < report.threshold;
  return report;
}

}  // namespace homlab
