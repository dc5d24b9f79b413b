#include "homlab/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace homlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad " + what + ": '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad " + what + ": '" + s + "'");
  }
}

}  // namespace

GraphInput load_graph_spec(const std::string& spec) {
  GraphInput in{ConstraintGraph({"0"}, {}), spec, ""};
  if (std::filesystem::exists(spec)) {
    std::string text = read_text_file(spec);
    in.hash = content_hash_hex(text);
    in.graph = parse_graph_text(text);
    return in;
  }
  auto parts = split(spec, ':');
  if (parts.size() > 2) throw std::invalid_argument("bad graph spec: '" + spec + "'");
  int param = parts.size() == 2 ? parse_int(parts[1], "graph parameter") : 0;
  in.graph = generate_named(parts[0], param);
  in.hash = content_hash_hex(spec);
  return in;
}

BoardInput load_board_spec(const std::string& spec) {
  BoardInput in{FiniteBoard({"0", "1"}, {{"0", "1"}}), spec, ""};
  if (std::filesystem::exists(spec)) {
    std::string text = read_text_file(spec);
    in.hash = content_hash_hex(text);
    in.board = parse_board_text(text);
    return in;
  }
  auto parts = split(spec, ':');
  if (parts.size() != 2) throw std::invalid_argument("bad board spec: '" + spec + "'");
  auto raw = split(parts[1], ',');
  bool ring = false;
  std::vector<int> params;
  for (const auto& tok : raw) {
    if (tok == "ring")
      ring = true;
    else
      params.push_back(parse_int(tok, "board parameter"));
  }
  in.board = generate_board(parts[0], params, ring);
  in.hash = content_hash_hex(spec);
  return in;
}

LinearOrder resolve_order(const ConstraintGraph& graph, const std::string& spec) {
  if (spec.empty() || spec == "auto") {
    if (auto dec = chordal_tree_decomposition(graph)) return natural_linear_order(graph, *dec);
    return declaration_order(graph);
  }
  if (spec == "declaration") return declaration_order(graph);
  std::istringstream is(read_text_file(spec));
  std::vector<int> by_rank;
  std::string name;
  while (is >> name) {
    if (name[0] == '#') {
      std::string rest;
      std::getline(is, rest);
      continue;
    }
    by_rank.push_back(graph.index_of(name));
  }
  if (static_cast<int>(by_rank.size()) != graph.size())
    throw std::invalid_argument("order file must list every vertex exactly once");
  return make_order(by_rank);
}

Interaction parse_phi_spec(const ConstraintGraph& graph, const std::string& spec,
                           const LinearOrder& order) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto args = split(rest, ',');
  auto need = [&](std::size_t k) {
    if (rest.empty() || args.size() != k)
      throw std::invalid_argument("phi spec '" + kind + "' expects " + std::to_string(k) +
                                  " argument(s)");
  };
  if (kind == "uniform") return Interaction::zero(graph);
  if (kind == "hardcore") {
    need(1);
    return Interaction::hard_core(graph, parse_double(args[0], "beta"));
  }
  if (kind == "potts-f" || kind == "potts-af" || kind == "wr") {
    need(2);
    int q = parse_int(args[0], "q");
    double beta = parse_double(args[1], "beta");
    if (kind == "wr") {
      if (graph.size() != q + 1)
        throw std::invalid_argument("wr:q expects a star graph with q leaves");
      return Interaction::widom_rowlinson(graph, beta);
    }
    if (graph.size() != q)
      throw std::invalid_argument("potts:q does not match the graph size");
    return kind == "potts-f" ? Interaction::ferro_potts(graph, beta)
                             : Interaction::antiferro_potts(graph, beta);
  }
  if (kind == "lambda") {
    need(2);
    return Interaction::vertex_activity(graph, graph.index_of(args[0]),
                                        parse_double(args[1], "lambda"));
  }
  if (kind == "prec-lambda") {
    need(1);
    return Interaction::rank_activity(graph, order, parse_double(args[0], "lambda"));
  }
  if (kind == "file") {
    need(1);
    return read_interaction_file(graph, args[0]);
  }
  throw std::invalid_argument("unknown phi spec: '" + spec + "'");
}

SiteSet parse_site_list(const FiniteBoard& board, const std::string& csv) {
  std::vector<int> sites;
  for (const auto& tok : split(csv, ','))
    if (!tok.empty()) sites.push_back(board.index_of(tok));
  return make_site_set(std::move(sites));
}

Configuration parse_assignment(const FiniteBoard& board, const ConstraintGraph& graph,
                               const std::string& csv) {
  Configuration config(board.size());
  for (const auto& tok : split(csv, ',')) {
    if (tok.empty()) continue;
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("assignment entries look like site=vertex, got '" + tok + "'");
    config.set(board.index_of(tok.substr(0, eq)), graph.index_of(tok.substr(eq + 1)));
  }
  return config;
}

// --- serialization -----------------------------------------------------------

ordered_json site_set_json(const FiniteBoard& board, const SiteSet& sites) {
  ordered_json arr = ordered_json::array();
  for (int s : sites) arr.push_back(board.name(s));
  return arr;
}

ordered_json config_json(const FiniteBoard& board, const ConstraintGraph& graph,
                         const Configuration& config) {
  ordered_json obj = ordered_json::object();
  for (int s = 0; s < config.size(); ++s)
    if (config.assigned(s)) obj[board.name(s)] = graph.name(config.value(s));
  return obj;
}

ordered_json order_json(const ConstraintGraph& graph, const LinearOrder& order) {
  ordered_json arr = ordered_json::array();
  for (int v : order.by_rank) arr.push_back(graph.name(v));
  return arr;
}

ordered_json graph_json(const ConstraintGraph& graph) {
  ordered_json obj;
  obj["vertices"] = graph.names();
  ordered_json es = ordered_json::array();
  for (auto [u, v] : graph.edges()) es.push_back(graph.name(u) + "-" + graph.name(v));
  obj["edges"] = es;
  return obj;
}

ordered_json dismantle_json(const ConstraintGraph& graph, const DismantleResult& result) {
  ordered_json obj;
  obj["dismantlable"] = result.dismantlable();
  if (result.certificate) {
    ordered_json steps = ordered_json::array();
    for (const auto& st : result.certificate->steps)
      steps.push_back({{"folded", graph.name(st.folded)}, {"absorber", graph.name(st.absorber)}});
    obj["folds"] = steps;
    obj["terminal"] = graph.name(result.certificate->terminal);
    obj["terminal_looped"] = result.certificate->terminal_looped;
  }
  if (result.stuck) {
    ordered_json alive = ordered_json::array();
    for (int v : result.stuck->stuck_vertices) alive.push_back(graph.name(v));
    obj["stuck_vertices"] = alive;
    obj["exhaustive_confirmed"] = result.stuck->exhaustive_confirmed;
  }
  return obj;
}

ordered_json chordality_json(const ConstraintGraph& graph, const ChordalityResult& result) {
  ordered_json obj;
  obj["chordal"] = result.chordal();
  if (result.order) {
    ordered_json ord = ordered_json::array();
    for (int v : *result.order) ord.push_back(graph.name(v));
    obj["elimination_order"] = ord;
  } else {
    ordered_json cyc = ordered_json::array();
    for (int v : result.chordless_cycle) cyc.push_back(graph.name(v));
    obj["chordless_cycle"] = cyc;
  }
  return obj;
}

ordered_json decomposition_json(const ConstraintGraph& graph,
                                const ChordalTreeDecomposition& dec) {
  ordered_json obj;
  ordered_json core = ordered_json::array();
  for (int v : dec.core) core.push_back(graph.name(v));
  obj["core"] = core;
  ordered_json trees = ordered_json::array();
  for (const auto& t : dec.tree_parts) {
    ordered_json part;
    ordered_json vs = ordered_json::array();
    for (int v : t.vertices) vs.push_back(graph.name(v));
    part["vertices"] = vs;
    part["root"] = graph.name(t.root);
    part["attach"] = graph.name(t.attach);
    trees.push_back(part);
  }
  obj["tree_parts"] = trees;
  ordered_json cones = ordered_json::array();
  for (const auto& c : dec.cone_parts) {
    ordered_json part;
    ordered_json vs = ordered_json::array();
    for (int v : c.vertices) vs.push_back(graph.name(v));
    part["vertices"] = vs;
    part["apex"] = graph.name(c.apex);
    cones.push_back(part);
  }
  obj["cone_parts"] = cones;
  return obj;
}

ordered_json mixing_verdict_json(const FiniteBoard& board, const ConstraintGraph& graph,
                                 const MixingVerdict& verdict) {
  ordered_json obj;
  obj["property"] = verdict.property;
  obj["gap"] = verdict.gap;
  obj["status"] = to_string(verdict.status);
  if (verdict.counterexample) {
    ordered_json ce;
    ce["alpha"] = config_json(board, graph, verdict.counterexample->alpha);
    ce["sigma"] = config_json(board, graph, verdict.counterexample->sigma);
    ce["beta"] = config_json(board, graph, verdict.counterexample->beta);
    obj["counterexample"] = ce;
  }
  if (verdict.ssf_failure) {
    ordered_json f;
    f["site"] = board.name(verdict.ssf_failure->site);
    f["boundary"] = config_json(board, graph, verdict.ssf_failure->boundary);
    obj["ssf_failure"] = f;
  }
  obj["search_bounds"] = {{"description", verdict.bounds.description},
                          {"checks", verdict.bounds.checks},
                          {"budget_exhausted", verdict.bounds.budget_exhausted}};
  return obj;
}

ordered_json m1_json(const FiniteBoard& board, const ConstraintGraph& graph,
                     const M1Verdict& verdict) {
  ordered_json obj;
  obj["status"] = to_string(verdict.status);
  obj["alphas_checked"] = verdict.alphas_checked;
  if (verdict.failing_alpha)
    obj["failing_alpha"] = config_json(board, graph, *verdict.failing_alpha);
  if (verdict.incomparable)
    obj["incomparable"] = {config_json(board, graph, verdict.incomparable->first),
                           config_json(board, graph, verdict.incomparable->second)};
  obj["budget_exhausted"] = verdict.budget_exhausted;
  return obj;
}

ordered_json m2_json(const FiniteBoard& board, const ConstraintGraph& graph,
                     const M2Verdict& verdict) {
  ordered_json obj;
  obj["status"] = to_string(verdict.status);
  obj["measured_distance"] = verdict.measured_distance;
  obj["pairs_checked"] = verdict.pairs_checked;
  if (verdict.violation) {
    ordered_json v;
    v["alpha1"] = config_json(board, graph, verdict.violation->alpha1);
    v["alpha2"] = config_json(board, graph, verdict.violation->alpha2);
    v["site"] = board.name(verdict.violation->site);
    v["distance"] = verdict.violation->distance;
    obj["violation"] = v;
  }
  obj["budget_exhausted"] = verdict.budget_exhausted;
  if (!verdict.note.empty()) obj["note"] = verdict.note;
  return obj;
}

ordered_json marginal_json(const FiniteBoard& board, const ConstraintGraph& graph,
                           const MarginalTable& table) {
  ordered_json obj;
  obj["probe"] = site_set_json(board, table.probe);
  ordered_json cells = ordered_json::array();
  int h = graph.size();
  int k = static_cast<int>(table.probe.size());
  for (std::size_t idx = 0; idx < table.probabilities.size(); ++idx) {
    std::size_t rem = idx;
    std::vector<int> vals(k);
    for (int i = k - 1; i >= 0; --i) {
      vals[i] = static_cast<int>(rem % h);
      rem /= h;
    }
    if (table.probabilities[idx] == 0) continue;
    std::string key;
    for (int i = 0; i < k; ++i) {
      if (i) key += ",";
      key += graph.name(vals[i]);
    }
    cells.push_back({{"values", key}, {"probability", table.probabilities[idx]}});
  }
  obj["cells"] = cells;
  return obj;
}

ordered_json decay_json(const DecayReport& report) {
  ordered_json obj;
  obj["mode"] = report.mode == DecayMode::WSM ? "WSM" : "SSM";
  obj["geometry"] = report.geometry;
  obj["distances"] = report.distances;
  obj["tv"] = report.tv_values;
  obj["pairs"] = report.pair_counts;
  if (std::isfinite(report.fitted_rate)) {
    obj["fitted_rate"] = report.fitted_rate;
    obj["fit_residual"] = report.fit_residual;
  } else {
    obj["fitted_rate"] = nullptr;
    obj["fit_residual"] = nullptr;
  }
  obj["fit_points"] = report.fit_points;
  obj["sampled"] = report.sampled;
  return obj;
}

ordered_json tail_bound_json(const TailBoundReport& report) {
  ordered_json obj;
  obj["variant"] = report.variant;
  obj["lambda"] = report.lambda;
  obj["k"] = report.ks;
  obj["lhs_log"] = report.lhs_log;
  obj["rhs_log"] = report.rhs_log;
  obj["holds"] = report.holds;
  return obj;
}

ordered_json qpi_json(const QofPiReport& report) {
  ordered_json obj;
  obj["q_of_pi"] = report.q_value;
  obj["threshold"] = report.threshold;
  obj["below_threshold"] = report.below_threshold;
  obj["boundary_configs"] = report.boundary_configs;
  return obj;
}

ordered_json spectral_json(const ConstraintGraph& graph, const ChannelChain& chain,
                           const SpectralReport& report) {
  ordered_json obj;
  ordered_json states = ordered_json::array();
  for (int v : chain.states) states.push_back(graph.name(v));
  obj["states"] = states;
  obj["transition"] = chain.transition;
  obj["eigenvalues"] = report.eigenvalues;
  obj["lambda_star"] = report.lambda_star;
  obj["rate_cap"] = report.rate_cap;
  return obj;
}

ordered_json make_run_report(const std::string& command, ordered_json inputs,
                             ordered_json parameters, std::uint64_t seed) {
  ordered_json report;
  report["command"] = command;
  report["inputs"] = std::move(inputs);
  report["parameters"] = std::move(parameters);
  report["seed"] = seed;
  return report;
}

ordered_json input_entry(const std::string& source, const std::string& hash) {
  return {{"source", source}, {"hash", hash}};
}

void emit_report(const ordered_json& report, const std::string& json_path, bool to_stdout) {
  std::string text = report.dump(2) + "\n";
  if (to_stdout) std::cout << text;
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + json_path);
    out << text;
  }
}

}  // namespace homlab
