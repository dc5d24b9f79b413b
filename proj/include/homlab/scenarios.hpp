#pragma once

#include "homlab/gibbs_engine.hpp"
#include "homlab/graph_core.hpp"
#include "homlab/homspace.hpp"

namespace homlab {

// A pinned-wall channel with two probe patterns at its ends.
struct ChannelScenario {
  ConstraintGraph graph;
  FiniteBoard board;
  Configuration sigma;
  Configuration alpha;
  Configuration beta;
  int separation = 0;

  ChannelScenario(ConstraintGraph g, FiniteBoard b)
      : graph(std::move(g)), board(std::move(b)), sigma(board.size()), alpha(board.size()),
        beta(board.size()) {}
};

// Looped-path channel on a strip of height 4: full top and bottom walls force
// every column into one of two states that must strictly alternate, so the
// joint cylinder [alpha sigma beta] is empty exactly at even column
// separation while both component cylinders stay nonempty.
ChannelScenario barbell_channel(int separation);

// Two-diagonal channel for the four-vertex graph with three loops: the sites
// squeezed between the diagonals are forced into a two-value chain whose
// values cannot mix, so opposite probe values at the channel ends are jointly
// inadmissible at every length.
ChannelScenario diagonal_channel(int length);

// Boundary pair around the diagonal channel whose single-site marginals are
// fully forced and opposite: total variation 1 at distance 2*length - 1.
struct ForcedPairScenario {
  ConstraintGraph graph;
  FiniteBoard board;
  SiteSet region;
  SiteSet probe;
  Configuration omega1;
  Configuration omega2;
  int distance = 0;

  ForcedPairScenario(ConstraintGraph g, FiniteBoard b)
      : graph(std::move(g)), board(std::move(b)), omega1(board.size()), omega2(board.size()) {}
};

ForcedPairScenario diagonal_channel_pair(int length);

}  // namespace homlab
