#include "homlab/graph_core.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace homlab {

SiteSet make_site_set(std::vector<int> sites) {
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

bool site_set_contains(const SiteSet& s, int x) {
  return std::binary_search(s.begin(), s.end(), x);
}

SiteSet site_set_union(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

SiteSet site_set_difference(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

SiteSet site_set_intersection(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

void check_identifier(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty identifier");
  if (s.front() == '#')
    throw std::invalid_argument("identifier may not start with '#': " + s);
  for (char c : s) {
    if (c == '-' || std::isspace(static_cast<unsigned char>(c)))
      throw std::invalid_argument("identifier may not contain '-' or spaces: " + s);
  }
}

std::vector<std::vector<int>> build_adjacency(int n, const std::vector<char>& matrix) {
  std::vector<std::vector<int>> adj(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (matrix[static_cast<std::size_t>(u) * n + v]) adj[u].push_back(v);
  return adj;
}

}  // namespace

ConstraintGraph::ConstraintGraph(
    std::vector<std::string> names,
    const std::vector<std::pair<std::string, std::string>>& edges)
    : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("constraint graph needs at least one vertex");
  std::map<std::string, int> lookup;
  for (int i = 0; i < size(); ++i) {
    check_identifier(names_[i]);
    if (!lookup.emplace(names_[i], i).second)
      throw std::invalid_argument("duplicate vertex name: " + names_[i]);
  }
  matrix_.assign(static_cast<std::size_t>(size()) * size(), 0);
  for (const auto& [a, b] : edges) {
    auto ia = lookup.find(a), ib = lookup.find(b);
    if (ia == lookup.end() || ib == lookup.end())
      throw std::invalid_argument("edge references unknown vertex: " + a + "-" + b);
    matrix_[idx(ia->second, ib->second)] = 1;
    matrix_[idx(ib->second, ia->second)] = 1;
  }
  adj_ = build_adjacency(size(), matrix_);
}

ConstraintGraph ConstraintGraph::from_indices(
    int n, const std::vector<std::pair<int, int>>& edges, std::vector<std::string> names) {
  if (names.empty()) {
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  if (static_cast<int>(names.size()) != n)
    throw std::invalid_argument("name count does not match vertex count");
  std::vector<std::pair<std::string, std::string>> named;
  named.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge index out of range");
    named.emplace_back(names[u], names[v]);
  }
  return ConstraintGraph(std::move(names), named);
}

void ConstraintGraph::check_vertex(int v) const {
  if (v < 0 || v >= size()) throw std::invalid_argument("vertex index out of range");
}

int ConstraintGraph::index_of(const std::string& name) const {
  auto f = find(name);
  if (!f) throw std::invalid_argument("unknown vertex: " + name);
  return *f;
}

std::optional<int> ConstraintGraph::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::vector<int> ConstraintGraph::loop_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (has_loop(v)) out.push_back(v);
  return out;
}

bool ConstraintGraph::all_loops() const {
  return static_cast<int>(loop_vertices().size()) == size();
}

std::vector<std::pair<int, int>> ConstraintGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size(); ++u)
    for (int v = u; v < size(); ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

int ConstraintGraph::edge_count() const { return static_cast<int>(edges().size()); }

ConstraintGraph ConstraintGraph::induced(const std::vector<int>& keep) const {
  std::vector<int> ks = make_site_set(keep);
  std::vector<std::string> names;
  names.reserve(ks.size());
  for (int v : ks) {
    check_vertex(v);
    names.push_back(names_[v]);
  }
  std::vector<std::pair<int, int>> es;
  for (std::size_t i = 0; i < ks.size(); ++i)
    for (std::size_t j = i; j < ks.size(); ++j)
      if (adjacent(ks[i], ks[j])) es.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return from_indices(static_cast<int>(ks.size()), es, names);
}

ConstraintGraph ConstraintGraph::without_loops() const {
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : edges())
    if (u != v) es.emplace_back(u, v);
  return from_indices(size(), es, names_);
}

std::uint64_t ConstraintGraph::adjacency_mask(int v) const {
  check_vertex(v);
  if (size() > 64)
    throw std::invalid_argument("adjacency masks need at most 64 vertices");
  std::uint64_t m = 0;
  for (int u : adj_[v]) m |= (1ULL << u);
  return m;
}

namespace {

ConstraintGraph make_complete(int n, bool loops) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + (loops ? 0 : 1); v < n; ++v) es.emplace_back(u, v);
  return ConstraintGraph::from_indices(n, es, names);
}

ConstraintGraph make_star(int n, bool center_loop, bool all_loops) {
  std::vector<std::string> names{"0"};
  for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i <= n; ++i) es.emplace_back(0, i);
  if (center_loop || all_loops) es.emplace_back(0, 0);
  if (all_loops)
    for (int i = 1; i <= n; ++i) es.emplace_back(i, i);
  return ConstraintGraph::from_indices(n + 1, es, names);
}

ConstraintGraph make_barbell(int n) {
  std::vector<std::string> names;
  for (int i = 0; i <= n + 1; ++i) names.push_back(std::to_string(i));
  std::vector<std::pair<int, int>> es{{0, 0}, {n + 1, n + 1}};
  for (int i = 0; i <= n; ++i) es.emplace_back(i, i + 1);
  return ConstraintGraph::from_indices(n + 2, es, names);
}

ConstraintGraph make_hq(int q) {
  // Clique "0".."q", looped apex "a" over the whole clique, loopless apex "b"
  // over the whole clique, no a-b edge.
  std::vector<std::string> names;
  for (int i = 0; i <= q; ++i) names.push_back(std::to_string(i));
  names.push_back("a");
  names.push_back("b");
  int a = q + 1, b = q + 2;
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u <= q; ++u) {
    for (int v = u + 1; v <= q; ++v) es.emplace_back(u, v);
    es.emplace_back(u, a);
    es.emplace_back(u, b);
  }
  es.emplace_back(a, a);
  return ConstraintGraph::from_indices(q + 3, es, names);
}

}  // namespace

ConstraintGraph generate_named(const std::string& family, int param) {
  auto need_positive = [&](int n) {
    if (n < 1) throw std::invalid_argument(family + " needs a positive parameter");
  };
  if (family == "K_n") {
    need_positive(param);
    return make_complete(param, false);
  }
  if (family == "K_n_looped") {
    need_positive(param);
    return make_complete(param, true);
  }
  if (family == "H_phi")
    return ConstraintGraph({"0", "1"}, {{"0", "0"}, {"0", "1"}});
  if (family == "S_n") {
    need_positive(param);
    return make_star(param, false, false);
  }
  if (family == "S_n_center_loop") {
    need_positive(param);
    return make_star(param, true, false);
  }
  if (family == "S_n_all_looped") {
    need_positive(param);
    return make_star(param, false, true);
  }
  if (family == "barbell_n") {
    need_positive(param);
    return make_barbell(param);
  }
  if (family == "H_q") {
    need_positive(param);
    return make_hq(param);
  }
  if (family == "counterexample_abcd")
    return ConstraintGraph({"a", "b", "c", "d"},
                           {{"a", "a"}, {"b", "b"}, {"c", "c"},
                            {"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  throw std::invalid_argument("unknown graph family: " + family);
}

std::vector<std::pair<std::string, ConstraintGraph>> builtin_graph_catalogue() {
  std::vector<std::pair<std::string, ConstraintGraph>> out;
  auto add = [&](const std::string& family, int p) {
    std::string label = family;
    if (p > 0) label += ":" + std::to_string(p);
    out.emplace_back(label, generate_named(family, p));
  };
  for (int n = 2; n <= 5; ++n) add("K_n", n);
  for (int n = 1; n <= 4; ++n) add("K_n_looped", n);
  add("H_phi", 0);
  for (int n = 2; n <= 4; ++n) add("S_n", n);
  for (int n = 2; n <= 4; ++n) add("S_n_center_loop", n);
  for (int n = 2; n <= 4; ++n) add("S_n_all_looped", n);
  for (int n = 1; n <= 3; ++n) add("barbell_n", n);
  for (int q = 1; q <= 5; ++q) add("H_q", q);
  add("counterexample_abcd", 0);
  return out;
}

FiniteBoard::FiniteBoard(std::vector<std::string> names,
                         const std::vector<std::pair<std::string, std::string>>& edges,
                         std::optional<std::vector<std::string>> interior) {
  ConstraintGraph as_graph(std::move(names), edges);
  names_ = as_graph.names();
  adj_.resize(size());
  for (int v = 0; v < size(); ++v) adj_[v] = as_graph.neighbors(v);
  if (interior) {
    std::vector<int> in;
    in.reserve(interior->size());
    for (const auto& s : *interior) in.push_back(index_of(s));
    interior_ = make_site_set(in);
  } else {
    interior_.resize(size());
    for (int i = 0; i < size(); ++i) interior_[i] = i;
  }
  validate();
}

FiniteBoard FiniteBoard::from_indices(int n, const std::vector<std::pair<int, int>>& edges,
                                      std::vector<std::string> names,
                                      std::optional<std::vector<int>> interior) {
  if (names.empty())
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  if (static_cast<int>(names.size()) != n)
    throw std::invalid_argument("name count does not match site count");
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge index out of range");
    named.emplace_back(names[u], names[v]);
  }
  std::optional<std::vector<std::string>> interior_names;
  if (interior) {
    interior_names.emplace();
    for (int s : *interior) interior_names->push_back(names.at(s));
  }
  return FiniteBoard(std::move(names), named, std::move(interior_names));
}

void FiniteBoard::validate() const {
  if (size() < 2) throw std::invalid_argument("board needs at least two sites");
  for (int x = 0; x < size(); ++x)
    if (std::binary_search(adj_[x].begin(), adj_[x].end(), x))
      throw std::invalid_argument("board must be simple (no loop at " + names_[x] + ")");
  // Connectivity.
  std::vector<char> seen(size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y : adj_[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        queue.push_back(y);
      }
  }
  if (reached != size()) throw std::invalid_argument("board must be connected");
}

int FiniteBoard::index_of(const std::string& name) const {
  auto f = find(name);
  if (!f) throw std::invalid_argument("unknown site: " + name);
  return *f;
}

std::optional<int> FiniteBoard::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool FiniteBoard::adjacent(int x, int y) const {
  return std::binary_search(adj_.at(x).begin(), adj_.at(x).end(), y);
}

int FiniteBoard::max_degree() const {
  int d = 0;
  for (int x = 0; x < size(); ++x) d = std::max(d, degree(x));
  return d;
}

std::vector<std::pair<int, int>> FiniteBoard::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < size(); ++x)
    for (int y : adj_[x])
      if (x < y) out.emplace_back(x, y);
  return out;
}

SiteSet FiniteBoard::exterior() const {
  SiteSet all(size());
  for (int i = 0; i < size(); ++i) all[i] = i;
  return site_set_difference(all, interior_);
}

bool FiniteBoard::is_interior(int s) const { return site_set_contains(interior_, s); }

std::optional<int> FiniteBoard::distance(int x, int y) const {
  return distance(SiteSet{x}, SiteSet{y});
}

std::optional<int> FiniteBoard::distance(const SiteSet& a, const SiteSet& b) const {
  if (a.empty()) throw std::invalid_argument("distance needs a nonempty source set");
  if (b.empty()) return std::nullopt;  // the "infinite" value
  std::vector<int> dist(size(), -1);
  std::deque<int> queue;
  for (int x : a) {
    dist.at(x) = 0;
    queue.push_back(x);
  }
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (site_set_contains(b, x)) return dist[x];
    for (int y : adj_[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  return std::nullopt;  // unreachable cannot happen on a connected board
}

SiteSet FiniteBoard::neighborhood(const SiteSet& a, int radius) const {
  if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
  std::vector<int> dist(size(), -1);
  std::deque<int> queue;
  for (int x : a) {
    dist.at(x) = 0;
    queue.push_back(x);
  }
  SiteSet out = a;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (dist[x] == radius) continue;
    for (int y : adj_[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        out.push_back(y);
        queue.push_back(y);
      }
  }
  return make_site_set(std::move(out));
}

SiteSet FiniteBoard::boundary(const SiteSet& a) const {
  SiteSet out;
  for (int x : a)
    for (int y : adj_[x])
      if (!site_set_contains(a, y)) out.push_back(y);
  return make_site_set(std::move(out));
}

SiteSet FiniteBoard::closure(const SiteSet& a) const {
  return site_set_union(a, boundary(a));
}

std::string grid_site_name(int x, int y) {
  return std::to_string(x) + "_" + std::to_string(y);
}

BoxBoard make_box_board(int width, int height, bool ring_exterior) {
  if (width < 1 || height < 1 || width * height < 2)
    throw std::invalid_argument("box needs at least two sites");
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) names.push_back(grid_site_name(x, y));
  std::vector<std::pair<int, int>> es;
  auto id = [&](int x, int y) { return y * width + x; };
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      if (x + 1 < width) es.emplace_back(id(x, y), id(x + 1, y));
      if (y + 1 < height) es.emplace_back(id(x, y), id(x, y + 1));
    }
  std::optional<std::vector<int>> interior;
  if (ring_exterior) {
    interior.emplace();
    for (int y = 1; y + 1 < height; ++y)
      for (int x = 1; x + 1 < width; ++x) interior->push_back(id(x, y));
    if (interior->empty())
      throw std::invalid_argument("box too small for an exterior ring");
  }
  BoxBoard out{FiniteBoard::from_indices(width * height, es, names, interior), width, height};
  return out;
}

namespace {

// Check a candidate row-major layout against the board's exact adjacency.
std::optional<BoxGeometry> verify_grid(const FiniteBoard& board, int width, int height,
                                       const std::vector<int>& grid) {
  int n = board.size();
  int expected_edges = (width - 1) * height + width * (height - 1);
  int degree_sum = 0;
  for (int x = 0; x < n; ++x) degree_sum += board.degree(x);
  if (degree_sum != 2 * expected_edges) return std::nullopt;
  std::vector<char> used(n, 0);
  for (int s : grid) {
    if (s < 0 || used[s]) return std::nullopt;
    used[s] = 1;
  }
  auto at = [&](int x, int y) { return grid[y * width + x]; };
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      if (x + 1 < width && !board.adjacent(at(x, y), at(x + 1, y))) return std::nullopt;
      if (y + 1 < height && !board.adjacent(at(x, y), at(x, y + 1))) return std::nullopt;
    }
  BoxGeometry geo;
  geo.width = width;
  geo.height = height;
  geo.site_at = grid;
  return geo;
}

std::optional<BoxGeometry> try_path_geometry(const FiniteBoard& board, int corner) {
  int n = board.size();
  std::vector<int> row{corner};
  int prev = -1, cur = corner;
  while (static_cast<int>(row.size()) < n) {
    int nxt = -1;
    for (int cand : board.neighbors(cur)) {
      if (cand == prev) continue;
      if (nxt >= 0) return std::nullopt;
      nxt = cand;
    }
    if (nxt < 0) return std::nullopt;
    row.push_back(nxt);
    prev = cur;
    cur = nxt;
  }
  return verify_grid(board, n, 1, row);
}

}  // namespace

std::optional<BoxGeometry> detect_box_geometry(const FiniteBoard& board) {
  // Try every low-degree site as the (0,0) corner; walk the bottom row with
  // the unique-common-neighbor rule, fill rows upward, then verify.
  int n = board.size();
  for (int corner = 0; corner < n; ++corner) {
    if (board.degree(corner) == 1) {
      if (auto geo = try_path_geometry(board, corner)) return geo;
      continue;
    }
    if (board.degree(corner) != 2) continue;
    const auto& nb = board.neighbors(corner);
    for (auto [right, up] : {std::pair{nb[0], nb[1]}, std::pair{nb[1], nb[0]}}) {
      // Bottom row: at (x,0) the continuation is the neighbor that is neither
      // the predecessor nor the site above; the site above is recognized as
      // the unique non-predecessor neighbor adjacent to the previous column's
      // above-site.
      std::vector<int> row{corner, right};
      int up_prev = up;
      bool ok = true;
      while (ok) {
        int cur = row.back(), prev = row[row.size() - 2];
        int up_cur = -1, nxt = -1;
        for (int cand : board.neighbors(cur)) {
          if (cand == prev) continue;
          if (board.adjacent(cand, up_prev)) {
            if (up_cur >= 0) { ok = false; break; }
            up_cur = cand;
          } else {
            if (nxt >= 0) { ok = false; break; }
            nxt = cand;
          }
        }
        if (!ok || up_cur < 0) { ok = false; break; }
        if (nxt < 0) break;  // reached the bottom-right corner
        row.push_back(nxt);
        up_prev = up_cur;
        if (static_cast<int>(row.size()) > n) { ok = false; break; }
      }
      if (!ok) continue;
      int width = static_cast<int>(row.size());
      if (n % width != 0) continue;
      int height = n / width;
      if (height < 2) continue;
      std::vector<int> grid(static_cast<std::size_t>(width) * height, -1);
      std::vector<char> used(n, 0);
      for (int x = 0; x < width; ++x) {
        grid[x] = row[x];
        used[row[x]] = 1;
      }
      bool filled = true;
      for (int y = 1; y < height && filled; ++y) {
        for (int x = 0; x < width && filled; ++x) {
          int below = grid[(y - 1) * width + x];
          int cand = -1;
          for (int c : board.neighbors(below)) {
            if (used[c]) continue;
            if (x > 0 && !board.adjacent(c, grid[y * width + x - 1])) continue;
            if (cand >= 0) { cand = -1; filled = false; break; }
            cand = c;
          }
          if (cand < 0) { filled = false; break; }
          grid[y * width + x] = cand;
          used[cand] = 1;
        }
      }
      if (!filled) continue;
      if (auto geo = verify_grid(board, width, height, grid)) return geo;
    }
  }
  return std::nullopt;
}

FiniteBoard generate_board(const std::string& family, const std::vector<int>& params,
                           bool ring_exterior) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw std::invalid_argument(family + " expects " + std::to_string(k) + " parameter(s)");
  };
  if (family == "box_Z2") {
    need(2);
    return make_box_board(params[0], params[1], ring_exterior).board;
  }
  if (family == "ball_Td") {
    need(2);
    int d = params[0], r = params[1];
    if (d < 1 || r < 0) throw std::invalid_argument("ball_Td needs d >= 1, r >= 0");
    // Rooted ball in the degree-d infinite tree: root has d children, every
    // other internal vertex d-1 children.
    std::vector<std::string> names{"0"};
    std::vector<std::pair<int, int>> es;
    std::vector<int> frontier{0};
    int next = 1;
    for (int depth = 0; depth < r; ++depth) {
      std::vector<int> fresh;
      for (int v : frontier) {
        int children = (v == 0) ? d : d - 1;
        for (int c = 0; c < children; ++c) {
          names.push_back(std::to_string(next));
          es.emplace_back(v, next);
          fresh.push_back(next);
          ++next;
        }
      }
      frontier = fresh;
    }
    if (next < 2) throw std::invalid_argument("ball_Td needs at least two sites (r >= 1)");
    return FiniteBoard::from_indices(next, es, names);
  }
  if (family == "path_n") {
    need(1);
    int m = params[0];
    if (m < 2) throw std::invalid_argument("path_n needs n >= 2 sites");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < m; ++i) es.emplace_back(i, i + 1);
    return FiniteBoard::from_indices(m, es);
  }
  if (family == "cycle_n") {
    need(1);
    int m = params[0];
    if (m < 3) throw std::invalid_argument("cycle_n needs n >= 3 sites");
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < m; ++i) es.emplace_back(i, (i + 1) % m);
    return FiniteBoard::from_indices(m, es);
  }
  if (family == "star_n") {
    need(1);
    int m = params[0];
    if (m < 1) throw std::invalid_argument("star_n needs at least one leaf");
    std::vector<std::pair<int, int>> es;
    for (int i = 1; i <= m; ++i) es.emplace_back(0, i);
    return FiniteBoard::from_indices(m + 1, es);
  }
  throw std::invalid_argument("unknown board family: " + family);
}

namespace {

struct ParsedText {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::optional<std::vector<std::string>> interior;
};

ParsedText parse_common(const std::string& text, bool board) {
  ParsedText out;
  bool saw_vertices = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto rest_tokens = [&] {
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      return toks;
    };
    if (head == "vertices:" || head == "sites:") {
      if (saw_vertices) throw std::invalid_argument("duplicate vertices line");
      out.vertices = rest_tokens();
      saw_vertices = true;
    } else if (head == "edges:") {
      for (const auto& tok : rest_tokens()) {
        auto dash = tok.find('-');
        if (dash == std::string::npos || tok.find('-', dash + 1) != std::string::npos)
          throw std::invalid_argument("bad edge token '" + tok + "' (want u-v)");
        out.edges.emplace_back(tok.substr(0, dash), tok.substr(dash + 1));
      }
    } else if (head == "interior:" && board) {
      out.interior = rest_tokens();
    } else {
      throw std::invalid_argument("unrecognized line " + std::to_string(lineno) + ": " + head);
    }
  }
  if (!saw_vertices) throw std::invalid_argument("missing vertices:/sites: line");
  return out;
}

}  // namespace

ConstraintGraph parse_graph_text(const std::string& text) {
  auto p = parse_common(text, false);
  return ConstraintGraph(p.vertices, p.edges);
}

FiniteBoard parse_board_text(const std::string& text) {
  auto p = parse_common(text, true);
  return FiniteBoard(p.vertices, p.edges, p.interior);
}

std::string to_text(const ConstraintGraph& g) {
  std::ostringstream out;
  out << "vertices:";
  for (const auto& n : g.names()) out << ' ' << n;
  out << "\nedges:";
  for (auto [u, v] : g.edges()) out << ' ' << g.name(u) << '-' << g.name(v);
  out << '\n';
  return out.str();
}

std::string to_text(const FiniteBoard& b) {
  std::ostringstream out;
  out << "sites:";
  for (const auto& n : b.names()) out << ' ' << n;
  out << "\nedges:";
  for (auto [u, v] : b.edges()) out << ' ' << b.name(u) << '-' << b.name(v);
  out << '\n';
  if (static_cast<int>(b.interior().size()) != b.size()) {
    out << "interior:";
    for (int s : b.interior()) out << ' ' << b.name(s);
    out << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConstraintGraph read_graph_file(const std::string& path) {
  return parse_graph_text(read_text_file(path));
}

FiniteBoard read_board_file(const std::string& path) {
  return parse_board_text(read_text_file(path));
}

std::string content_hash_hex(const std::string& content) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : content) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t SplitRng::next() {
  // splitmix64: tiny, portable, and stable across platforms.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitRng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  return next() % n;
}

bool SplitRng::chance(double p) { return unit() < p; }

double SplitRng::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

ConstraintGraph random_graph(int max_vertices, SplitRng& rng) {
  if (max_vertices < 1) throw std::invalid_argument("need at least one vertex");
  int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vertices)));
  double edge_p = 0.2 + 0.6 * rng.unit();
  double loop_p = 0.2 + 0.6 * rng.unit();
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n; ++u) {
    if (rng.chance(loop_p)) es.emplace_back(u, u);
    for (int v = u + 1; v < n; ++v)
      if (rng.chance(edge_p)) es.emplace_back(u, v);
  }
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return ConstraintGraph::from_indices(n, es, names);
}

}  // namespace homlab
