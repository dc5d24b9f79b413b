#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "homlab/chordal_decomp.hpp"
#include "homlab/fold_analysis.hpp"
#include "homlab/gibbs_engine.hpp"
#include "homlab/graph_core.hpp"
#include "homlab/homspace.hpp"
#include "homlab/spectral.hpp"
#include "homlab/umc_engine.hpp"

namespace homlab {

using ordered_json = nlohmann::ordered_json;

// Inputs parsed from a CLI spec string: either a path to a file in the plain
// text exchange format or "<family>[:p1,p2,...]" for the builtin generators.
struct GraphInput {
  ConstraintGraph graph;
  std::string source;
  std::string hash;
};
struct BoardInput {
  FiniteBoard board;
  std::string source;
  std::string hash;
};

GraphInput load_graph_spec(const std::string& spec);
// Board families accept a trailing ",ring" to add an exterior ring.
BoardInput load_board_spec(const std::string& spec);

// "auto" derives the order from the chordal/tree decomposition when one
// exists (declaration order otherwise); "declaration" forces the latter; any
// other value is a path to a file listing vertex names, smallest first.
LinearOrder resolve_order(const ConstraintGraph& graph, const std::string& spec);

// uniform | hardcore:beta | potts-f:q,beta | potts-af:q,beta | wr:q,beta |
// lambda:vstar,lambda | prec-lambda:lambda | file:path
Interaction parse_phi_spec(const ConstraintGraph& graph, const std::string& spec,
                           const LinearOrder& order);

SiteSet parse_site_list(const FiniteBoard& board, const std::string& csv);
// "site=vertex,site=vertex,..."
Configuration parse_assignment(const FiniteBoard& board, const ConstraintGraph& graph,
                               const std::string& csv);

// --- report serialization ---------------------------------------------------

ordered_json site_set_json(const FiniteBoard& board, const SiteSet& sites);
ordered_json config_json(const FiniteBoard& board, const ConstraintGraph& graph,
                         const Configuration& config);
ordered_json order_json(const ConstraintGraph& graph, const LinearOrder& order);

ordered_json graph_json(const ConstraintGraph& graph);
ordered_json dismantle_json(const ConstraintGraph& graph, const DismantleResult& result);
ordered_json chordality_json(const ConstraintGraph& graph, const ChordalityResult& result);
ordered_json decomposition_json(const ConstraintGraph& graph,
                                const ChordalTreeDecomposition& dec);
ordered_json mixing_verdict_json(const FiniteBoard& board, const ConstraintGraph& graph,
                                 const MixingVerdict& verdict);
ordered_json m1_json(const FiniteBoard& board, const ConstraintGraph& graph,
                     const M1Verdict& verdict);
ordered_json m2_json(const FiniteBoard& board, const ConstraintGraph& graph,
                     const M2Verdict& verdict);
ordered_json marginal_json(const FiniteBoard& board, const ConstraintGraph& graph,
                           const MarginalTable& table);
ordered_json decay_json(const DecayReport& report);
ordered_json tail_bound_json(const TailBoundReport& report);
ordered_json qpi_json(const QofPiReport& report);
ordered_json spectral_json(const ConstraintGraph& graph, const ChannelChain& chain,
                           const SpectralReport& report);

// RunReport skeleton: command, inputs, parameters, seed. Wall-clock time is
// deliberately not part of the JSON so reports are byte-identical across
// runs; it is printed on stderr instead.
ordered_json make_run_report(const std::string& command, ordered_json inputs,
                             ordered_json parameters, std::uint64_t seed);

ordered_json input_entry(const std::string& source, const std::string& hash);

// Dump with a trailing newline; optionally also to a file.
void emit_report(const ordered_json& report, const std::string& json_path, bool to_stdout);

}  // namespace homlab
