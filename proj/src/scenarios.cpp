#include "homlab/scenarios.hpp"

#include <stdexcept>
#include <string>

namespace homlab {

ChannelScenario barbell_channel(int separation) {
  if (separation < 1) throw std::invalid_argument("channel separation must be positive");
  auto geo = make_box_board(separation + 1, 4);
  ChannelScenario sc(generate_named("barbell_n", 1), geo.board);
  const int v0 = sc.graph.index_of("0");
  const int v1 = sc.graph.index_of("1");
  const int v2 = sc.graph.index_of("2");
  // Top wall all-0, bottom wall all-2. A column (top inner, bottom inner) is
  // then forced into (0,1) or (1,2); the missing 1-1 loop makes neighbouring
  // columns take different states.
  for (int x = 0; x <= separation; ++x) {
    sc.sigma.set(geo.site(x, 3), v0);
    sc.sigma.set(geo.site(x, 0), v2);
  }
  sc.alpha.set(geo.site(0, 2), v1);           // column 0 in state (1,2)
  sc.beta.set(geo.site(separation, 1), v1);   // far column in state (0,1)
  sc.separation = separation;
  return sc;
}

namespace {

struct DiagonalFrame {
  BoxBoard geo;
  int va, vb, vc, vd;
  int length;
};

DiagonalFrame diagonal_frame(const ConstraintGraph& g, int length) {
  if (length < 2) throw std::invalid_argument("channel length must be at least 2");
  DiagonalFrame f{make_box_board(length + 2, length + 4), g.index_of("a"), g.index_of("b"),
                  g.index_of("c"), g.index_of("d"), length};
  return f;
}

// Walls on the diagonals y = x (k = 1..L+1) and y = x+3 (k = 0..L) with
// strictly alternating a/d values. Each squeezed site (k,k+1) or (k,k+2)
// sees one a and one d on its wall, so it must map into {b, c}; consecutive
// squeezed sites are adjacent and b-c is not an edge, so the whole channel
// is constant.
void pin_diagonals(const DiagonalFrame& f, Configuration& sigma) {
  for (int k = 1; k <= f.length + 1; ++k)
    sigma.set(f.geo.site(k, k), k % 2 ? f.va : f.vd);
  for (int k = 0; k <= f.length; ++k)
    sigma.set(f.geo.site(k, k + 3), k % 2 ? f.vd : f.va);
}

}  // namespace

ChannelScenario diagonal_channel(int length) {
  auto g = generate_named("counterexample_abcd");
  DiagonalFrame f = diagonal_frame(g, length);
  ChannelScenario sc(std::move(g), f.geo.board);
  pin_diagonals(f, sc.sigma);
  sc.alpha.set(f.geo.site(1, 2), f.vb);
  sc.beta.set(f.geo.site(length, length + 1), f.vc);
  sc.separation = 2 * (length - 1);
  return sc;
}

ForcedPairScenario diagonal_channel_pair(int length) {
  auto g = generate_named("counterexample_abcd");
  DiagonalFrame f = diagonal_frame(g, length);
  ForcedPairScenario sc(std::move(g), f.geo.board);

  std::vector<int> region;
  for (int k = 1; k <= length; ++k) region.push_back(f.geo.site(k, k + 1));
  for (int k = 1; k <= length - 1; ++k) region.push_back(f.geo.site(k, k + 2));
  sc.region = make_site_set(region);
  sc.probe = make_site_set({f.geo.site(1, 2)});

  pin_diagonals(f, sc.omega1);
  // The two non-wall rim sites: (0,2) next to the near probe, pinned alike in
  // both boundaries, and (L, L+2) above the far end of the channel, where the
  // two boundaries disagree. The latter chains the whole channel to b or c.
  sc.omega1.set(f.geo.site(0, 2), f.va);
  sc.omega2 = sc.omega1;
  sc.omega1.set(f.geo.site(length, length + 2), f.vb);
  sc.omega2.set(f.geo.site(length, length + 2), f.vc);

  SiteSet rim = sc.board.boundary(sc.region);
  sc.omega1 = sc.omega1.restricted_to(rim);
  sc.omega2 = sc.omega2.restricted_to(rim);
  sc.distance = 2 * length - 1;
  return sc;
}

}  // namespace homlab
