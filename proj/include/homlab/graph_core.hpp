#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace homlab {

// A set of board sites, kept sorted and duplicate-free.
using SiteSet = std::vector<int>;

SiteSet make_site_set(std::vector<int> sites);
bool site_set_contains(const SiteSet& s, int x);
SiteSet site_set_union(const SiteSet& a, const SiteSet& b);
SiteSet site_set_difference(const SiteSet& a, const SiteSet& b);
SiteSet site_set_intersection(const SiteSet& a, const SiteSet& b);

// Finite graph with loops permitted. Vertices are named strings; the
// declaration order of the names is the canonical vertex order everywhere
// (ties in searches, serialization, value enumeration).
class ConstraintGraph {
 public:
  ConstraintGraph(std::vector<std::string> names,
                  const std::vector<std::pair<std::string, std::string>>& edges);

  static ConstraintGraph from_indices(
      int n, const std::vector<std::pair<int, int>>& edges,
      std::vector<std::string> names = {});

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // throws on unknown name
  std::optional<int> find(const std::string& name) const;

  bool adjacent(int u, int v) const { return matrix_[idx(u, v)] != 0; }
  bool has_loop(int v) const { return adjacent(v, v); }
  std::vector<int> loop_vertices() const;
  bool all_loops() const;

  // Sorted; contains v itself exactly when v carries a loop.
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

  // Normalized (u <= v), sorted lexicographically. Loops appear as {v,v}.
  std::vector<std::pair<int, int>> edges() const;
  int edge_count() const;

  // Induced subgraph on `keep` (indices into this graph, any order; they are
  // sorted first). Names are preserved; indices are renumbered.
  ConstraintGraph induced(const std::vector<int>& keep) const;
  ConstraintGraph without_loops() const;

  // Neighborhood bitmask; requires size() <= 64.
  std::uint64_t adjacency_mask(int v) const;

  bool operator==(const ConstraintGraph& o) const {
    return names_ == o.names_ && matrix_ == o.matrix_;
  }

 private:
  std::size_t idx(int u, int v) const {
    return static_cast<std::size_t>(u) * names_.size() + v;
  }
  void check_vertex(int v) const;

  std::vector<std::string> names_;
  std::vector<std::vector<int>> adj_;
  std::vector<char> matrix_;
};

// Named constraint-graph catalogue. Families:
//   K_n            complete, loopless (n >= 1)
//   K_n_looped     complete with all loops
//   H_phi          two vertices 0,1; edges {0,0},{0,1}
//   S_n            star, center "0", leaves "1".."n", no loops (n >= 1)
//   S_n_center_loop  star plus loop at the center
//   S_n_all_looped   star plus loops everywhere
//   barbell_n      path 0..n+1 with loops at the two ends (n >= 1)
//   H_q            complete K_{q+1} named "0".."q" plus "a" (looped, adjacent
//                  to all of the clique) and "b" (loopless, adjacent to all of
//                  the clique); a and b not adjacent (q >= 1)
//   counterexample_abcd  vertices a,b,c,d; edges {a,a},{b,b},{c,c},{a,b},
//                  {a,c},{b,d},{c,d}
ConstraintGraph generate_named(const std::string& family, int param = 0);

// All catalogue instances used by the regression battery.
std::vector<std::pair<std::string, ConstraintGraph>> builtin_graph_catalogue();

// Finite board: simple, connected, at least two sites, with a distinguished
// interior subset (defaults to every site). Site names follow the same
// declaration-order convention as graph vertices.
class FiniteBoard {
 public:
  FiniteBoard(std::vector<std::string> names,
              const std::vector<std::pair<std::string, std::string>>& edges,
              std::optional<std::vector<std::string>> interior = std::nullopt);

  static FiniteBoard from_indices(
      int n, const std::vector<std::pair<int, int>>& edges,
      std::vector<std::string> names = {},
      std::optional<std::vector<int>> interior = std::nullopt);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;
  std::optional<int> find(const std::string& name) const;

  bool adjacent(int x, int y) const;
  const std::vector<int>& neighbors(int x) const { return adj_.at(x); }
  int degree(int x) const { return static_cast<int>(adj_.at(x).size()); }
  int max_degree() const;
  std::vector<std::pair<int, int>> edges() const;

  const SiteSet& interior() const { return interior_; }
  SiteSet exterior() const;
  bool is_interior(int s) const;

  // Graph metric. distance(A, B) is std::nullopt when B is empty
  // (the "infinite" value); A must be nonempty.
  std::optional<int> distance(int x, int y) const;
  std::optional<int> distance(const SiteSet& a, const SiteSet& b) const;
  SiteSet neighborhood(const SiteSet& a, int radius) const;  // N_r(a)
  SiteSet boundary(const SiteSet& a) const;                  // ∂a
  SiteSet closure(const SiteSet& a) const;                   // a ∪ ∂a

 private:
  void validate() const;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> adj_;
  SiteSet interior_;
};

// Rectangular grid board with coordinate access kept alongside.
struct BoxBoard {
  FiniteBoard board;
  int width = 0;
  int height = 0;
  int site(int x, int y) const { return y * width + x; }
  std::pair<int, int> coords(int s) const { return {s % width, s / width}; }
};

std::string grid_site_name(int x, int y);
BoxBoard make_box_board(int width, int height, bool ring_exterior = false);

// Recover grid structure from an arbitrary board (used to seed grid-specific
// searches on boards loaded from files). Returns site ids in row-major order.
struct BoxGeometry {
  int width = 0;
  int height = 0;
  std::vector<int> site_at;  // row-major: site_at[y*width+x]
  int site(int x, int y) const { return site_at[y * width + x]; }
};
std::optional<BoxGeometry> detect_box_geometry(const FiniteBoard& board);

// Board generators. Families: box_Z2 (params w,h), ball_Td (params d,r),
// path_n (n >= 2 sites), cycle_n (n >= 3), star_n (n >= 1 leaves).
FiniteBoard generate_board(const std::string& family,
                           const std::vector<int>& params,
                           bool ring_exterior = false);

// Plain-text exchange format.
//   # comment lines and blank lines ignored
//   vertices: a b c          (or  sites: x0 x1 ...  for boards)
//   edges: a-a a-b b-c
//   interior: x0 x1          (boards only, optional)
// Identifiers must be nonempty, free of whitespace and '-', and not start
// with '#'.
ConstraintGraph parse_graph_text(const std::string& text);
FiniteBoard parse_board_text(const std::string& text);
std::string to_text(const ConstraintGraph& g);
std::string to_text(const FiniteBoard& b);
std::string read_text_file(const std::string& path);
ConstraintGraph read_graph_file(const std::string& path);
FiniteBoard read_board_file(const std::string& path);

// FNV-1a content hash used in run reports.
std::string content_hash_hex(const std::string& content);

// Deterministic, implementation-independent RNG helpers (std::mt19937_64 has
// a pinned algorithm; distributions do not, so draw bits directly).
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next();
  // Uniform in [0, n), n >= 1, via rejection-free threshold on 64 bits.
  std::uint64_t below(std::uint64_t n);
  bool chance(double p);
  double unit();  // [0,1)

 private:
  std::uint64_t state_;
};

// Seeded Erdős–Rényi-with-loops graph used by the fuzz batteries.
ConstraintGraph random_graph(int max_vertices, SplitRng& rng);

}  // namespace homlab
