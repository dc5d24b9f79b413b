// homlab: analysis and verification toolkit for homomorphism spaces
// Hom(G, H) — graph-structure analysis, mixing-property checks with
// certificates, Gibbs-specification measurements, and the scripted
// reproduction suite. Every command emits a deterministic JSON report
// (wall-clock goes to stderr only) and uses exit codes
// 0 = holds / 1 = fails (with certificate) / 2 = inconclusive.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homlab/cli_commands.hpp"
#include "homlab/json_io.hpp"
#include "homlab/scenarios.hpp"

using namespace homlab;

namespace {

int exit_of(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Holds: return 0;
    case VerdictStatus::Fails: return 1;
    default: return 2;
  }
}

std::vector<int> parse_int_list(const std::string& csv, const std::string& what) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    try {
      out.push_back(std::stoi(cur));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad " + what + ": '" + cur + "'");
    }
    cur.clear();
  };
  for (char c : csv) {
    if (c == ',')
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

struct Common {
  std::string json_path;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--json", c.json_path, "also write the JSON report to this file");
  cmd->add_option("--seed", c.seed, "random seed (always recorded in the report)");
}

void finish(const ordered_json& report, const Common& c) {
  emit_report(report, c.json_path, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homomorphism-space analysis toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;
  auto started = std::chrono::steady_clock::now();

  // ---- analyze ----
  std::string an_graph;
  Common an_c;
  auto* analyze = app.add_subcommand("analyze", "safe symbol / decomposition / dismantlability ladder");
  analyze->add_option("graph", an_graph, "graph file or family spec")->required();
  add_common(analyze, an_c);
  analyze->callback([&] {
    GraphInput in = load_graph_spec(an_graph);
    ordered_json report = make_run_report(
        "analyze", {{"graph", input_entry(in.source, in.hash)}}, ordered_json::object(), an_c.seed);
    report["results"] = analyze_graph(in.graph);
    finish(report, an_c);
  });

  // ---- fold ----
  std::string fo_graph, fo_cert;
  Common fo_c;
  auto* fold = app.add_subcommand("fold", "greedy dismantle with fold certificate");
  fold->add_option("graph", fo_graph)->required();
  fold->add_option("--certificate", fo_cert, "write the fold sequence to this file");
  add_common(fold, fo_c);
  fold->callback([&] {
    GraphInput in = load_graph_spec(fo_graph);
    auto result = dismantle(in.graph);
    if (result.certificate && !replay_certificate(in.graph, *result.certificate))
      throw std::logic_error("fold certificate failed replay");
    ordered_json report = make_run_report(
        "fold", {{"graph", input_entry(in.source, in.hash)}}, ordered_json::object(), fo_c.seed);
    report["results"] = dismantle_json(in.graph, result);
    finish(report, fo_c);
    if (!fo_cert.empty()) {
      ordered_json cert = ordered_json::array();
      if (result.certificate)
        for (const auto& st : result.certificate->steps)
          cert.push_back({{"folded", in.graph.name(st.folded)},
                          {"absorber", in.graph.name(st.absorber)}});
      emit_report(cert, fo_cert, false);
    }
    exit_code = result.dismantlable() ? 0 : 1;
  });

  // ---- chordal ----
  std::string ch_graph;
  Common ch_c;
  auto* chordal = app.add_subcommand("chordal", "loop-chordality and elimination order");
  chordal->add_option("graph", ch_graph)->required();
  add_common(chordal, ch_c);
  chordal->callback([&] {
    GraphInput in = load_graph_spec(ch_graph);
    ordered_json report = make_run_report(
        "chordal", {{"graph", input_entry(in.source, in.hash)}}, ordered_json::object(), ch_c.seed);
    ordered_json res;
    res["all_loops"] = in.graph.all_loops();
    res["loop_chordal"] = is_loop_chordal(in.graph);
    // the looped elimination order is only defined when every vertex carries a loop
    res["looped_variant"] =
        in.graph.all_loops()
            ? chordality_json(in.graph, perfect_elimination_order(in.graph, true))
            : ordered_json();
    res["deloop"] =
        chordality_json(in.graph.without_loops(),
                        perfect_elimination_order(in.graph.without_loops(), false));
    report["results"] = res;
    finish(report, ch_c);
    exit_code = res["loop_chordal"].get<bool>() ? 0 : 1;
  });

  // ---- decompose ----
  std::string de_graph;
  Common de_c;
  auto* decompose = app.add_subcommand("decompose", "chordal/tree decomposition and vertex order");
  decompose->add_option("graph", de_graph)->required();
  add_common(decompose, de_c);
  decompose->callback([&] {
    GraphInput in = load_graph_spec(de_graph);
    ordered_json report = make_run_report(
        "decompose", {{"graph", input_entry(in.source, in.hash)}}, ordered_json::object(),
        de_c.seed);
    auto dec = chordal_tree_decomposition(in.graph);
    ordered_json res;
    res["decomposable"] = dec.has_value();
    if (dec) {
      if (!validate_decomposition(in.graph, *dec))
        throw std::logic_error("decomposition failed its own validity check");
      res["decomposition"] = decomposition_json(in.graph, *dec);
      res["vertex_order"] = order_json(in.graph, natural_linear_order(in.graph, *dec));
    }
    report["results"] = res;
    finish(report, de_c);
    exit_code = dec ? 0 : 1;
  });

  // ---- check ----
  std::string ck_prop, ck_graph, ck_board, ck_assign;
  int ck_gap = 2, ck_radius = 1, ck_max_shape = 1, ck_sigma = 12, ck_window = 4;
  long ck_budget = 200'000;
  bool ck_stabilize = false, ck_no_seeds = false;
  Common ck_c;
  auto* check = app.add_subcommand(
      "check", "mixing properties: strong_irreducibility | tssm | ssf | admissible");
  check->add_option("property", ck_prop)->required();
  check->add_option("graph", ck_graph)->required();
  check->add_option("--board", ck_board)->required();
  check->add_option("--gap", ck_gap, "distance gap g");
  check->add_option("--budget", ck_budget, "cylinder-check budget");
  check->add_option("--sigma-max", ck_sigma, "max sigma shape size (tssm)");
  check->add_option("--window", ck_window, "sigma window radius (tssm)");
  check->add_option("--max-shape", ck_max_shape, "max |A|,|B| (strong irreducibility)");
  check->add_flag("--no-seeds", ck_no_seeds, "disable grid channel-pattern seeding (tssm)");
  check->add_option("--assign", ck_assign, "configuration site=vertex,... (admissible mode)");
  check->add_option("--radius", ck_radius, "extension radius (admissible mode)");
  check->add_flag("--stabilize", ck_stabilize, "grow the radius until the verdict repeats");
  add_common(check, ck_c);
  check->callback([&] {
    GraphInput gin = load_graph_spec(ck_graph);
    BoardInput bin = load_board_spec(ck_board);
    ordered_json inputs{{"graph", input_entry(gin.source, gin.hash)},
                        {"board", input_entry(bin.source, bin.hash)}};
    MixingOptions opts;
    opts.budget = ck_budget;
    opts.sigma_max_size = ck_sigma;
    opts.window_radius = ck_window;
    opts.max_shape = ck_max_shape;
    opts.seed_channel_patterns = !ck_no_seeds;

    if (ck_prop == "admissible") {
      Configuration config = parse_assignment(bin.board, gin.graph, ck_assign);
      ordered_json report = make_run_report(
          "check", inputs,
          {{"property", "admissible"}, {"radius", ck_radius}, {"stabilize", ck_stabilize}},
          ck_c.seed);
      report["results"] =
          admissible_radius_report(bin.board, gin.graph, config, ck_radius, ck_stabilize);
      finish(report, ck_c);
      return;
    }

    MixingVerdict verdict;
    if (ck_prop == "strong_irreducibility" || ck_prop == "si")
      verdict = check_strong_irreducibility(bin.board, gin.graph, ck_gap, opts);
    else if (ck_prop == "tssm" || ck_prop == "TSSM")
      verdict = check_TSSM(bin.board, gin.graph, ck_gap, opts);
    else if (ck_prop == "ssf" || ck_prop == "SSF")
      verdict = check_SSF(bin.board, gin.graph);
    else
      throw std::invalid_argument("unknown property: '" + ck_prop + "'");
    ordered_json report = make_run_report(
        "check", inputs, {{"property", verdict.property}, {"gap", verdict.gap}, {"budget", ck_budget}},
        ck_c.seed);
    report["results"] = mixing_verdict_json(bin.board, gin.graph, verdict);
    finish(report, ck_c);
    exit_code = exit_of(verdict.status);
  });

  // ---- umc ----
  std::string um_graph, um_board, um_order = "auto";
  int um_distance = -1, um_max_shape = 1;
  long um_pairs = 1'000'000;
  Common um_c;
  auto* umc = app.add_subcommand("umc", "unique-maximal-configuration checks (M1, M2)");
  umc->add_option("graph", um_graph)->required();
  umc->add_option("--board", um_board)->required();
  umc->add_option("--order", um_order, "auto | declaration | order file");
  umc->add_option("--distance", um_distance, "M2 distance bound g (default |H|-2)");
  umc->add_option("--m1-max-shape", um_max_shape, "check M1 on all shapes up to this size");
  umc->add_option("--pairs-budget", um_pairs);
  add_common(umc, um_c);
  umc->callback([&] {
    GraphInput gin = load_graph_spec(um_graph);
    BoardInput bin = load_board_spec(um_board);
    LinearOrder order = resolve_order(gin.graph, um_order);
    int g = um_distance >= 0 ? um_distance : std::max(0, gin.graph.size() - 2);

    PointSet points = enumerate_points(bin.board, gin.graph);
    ordered_json shapes_report = ordered_json::array();
    VerdictStatus m1_overall = VerdictStatus::Holds;
    std::vector<SiteSet> shapes{SiteSet{}};
    for (int s = 0; s < bin.board.size(); ++s)
      if (um_max_shape >= 1) shapes.push_back(SiteSet{s});
    if (um_max_shape >= 2)
      for (int s = 0; s < bin.board.size(); ++s)
        for (int t = s + 1; t < bin.board.size(); ++t) shapes.push_back(make_site_set({s, t}));
    for (const auto& a : shapes) {
      M1Verdict v = verify_M1(bin.board, gin.graph, order, a, points);
      if (v.status == VerdictStatus::Fails) m1_overall = VerdictStatus::Fails;
      else if (v.status == VerdictStatus::Unknown && m1_overall == VerdictStatus::Holds)
        m1_overall = VerdictStatus::Unknown;
      ordered_json row;
      row["shape"] = site_set_json(bin.board, a);
      row["verdict"] = m1_json(bin.board, gin.graph, v);
      shapes_report.push_back(row);
      if (v.status == VerdictStatus::Fails) break;
    }

    ordered_json res;
    res["order"] = order_json(gin.graph, order);
    res["m1_status"] = to_string(m1_overall);
    res["m1_shapes"] = shapes_report;
    VerdictStatus overall = m1_overall;
    if (m1_overall == VerdictStatus::Holds) {
      M2Verdict m2 = verify_M2(bin.board, gin.graph, order, g, points, um_pairs, um_c.seed);
      res["m2"] = m2_json(bin.board, gin.graph, m2);
      res["m2_distance_bound"] = g;
      res["h_minus_2"] = std::max(0, gin.graph.size() - 2);
      if (m2.status != VerdictStatus::Holds) overall = m2.status;
    }
    ordered_json report = make_run_report(
        "umc",
        {{"graph", input_entry(gin.source, gin.hash)}, {"board", input_entry(bin.source, bin.hash)}},
        {{"order", um_order}, {"distance", g}, {"m1_max_shape", um_max_shape}}, um_c.seed);
    report["results"] = res;
    finish(report, um_c);
    exit_code = exit_of(overall);
  });

  // ---- gibbs ----
  auto* gibbs = app.add_subcommand("gibbs", "Gibbs specification measurements");
  gibbs->require_subcommand(1);

  std::string gm_graph, gm_board, gm_phi = "uniform", gm_order = "auto";
  std::string gm_region, gm_boundary, gm_probe;
  Common gm_c;
  auto* gmarg = gibbs->add_subcommand("marginal", "conditional marginal table on a probe");
  gmarg->add_option("--graph", gm_graph)->required();
  gmarg->add_option("--board", gm_board)->required();
  gmarg->add_option("--phi", gm_phi);
  gmarg->add_option("--order", gm_order, "vertex order (for prec-lambda)");
  gmarg->add_option("--region", gm_region, "region sites, comma-separated")->required();
  gmarg->add_option("--boundary", gm_boundary, "boundary condition site=vertex,...")->required();
  gmarg->add_option("--probe", gm_probe, "probe sites (default: whole region)");
  add_common(gmarg, gm_c);
  gmarg->callback([&] {
    GraphInput gin = load_graph_spec(gm_graph);
    BoardInput bin = load_board_spec(gm_board);
    LinearOrder order = resolve_order(gin.graph, gm_order);
    Interaction phi = parse_phi_spec(gin.graph, gm_phi, order);
    SpecificationQuery query{parse_site_list(bin.board, gm_region),
                             parse_assignment(bin.board, gin.graph, gm_boundary)};
    SiteSet probe = gm_probe.empty() ? query.region : parse_site_list(bin.board, gm_probe);
    MarginalTable table = marginal_table(bin.board, gin.graph, phi, query, probe);
    ordered_json report = make_run_report(
        "gibbs marginal",
        {{"graph", input_entry(gin.source, gin.hash)}, {"board", input_entry(bin.source, bin.hash)}},
        {{"phi", gm_phi}, {"region", gm_region}, {"boundary", gm_boundary}}, gm_c.seed);
    report["results"] = marginal_json(bin.board, gin.graph, table);
    report["results"]["log_partition"] = log_partition(bin.board, gin.graph, phi, query);
    finish(report, gm_c);
  });

  std::string gd_graph, gd_board, gd_phi = "uniform", gd_order = "auto", gd_mode = "wsm";
  std::string gd_probe, gd_distances = "1,2,3";
  int gd_radius = -1, gd_samples = 24;
  long gd_exhaustive = 4096;
  Common gd_c;
  auto* gdecay = gibbs->add_subcommand("decay", "total-variation decay with distance");
  gdecay->add_option("--graph", gd_graph)->required();
  gdecay->add_option("--board", gd_board)->required();
  gdecay->add_option("--phi", gd_phi);
  gdecay->add_option("--order", gd_order);
  gdecay->add_option("--mode", gd_mode, "wsm | ssm");
  gdecay->add_option("--probe", gd_probe, "probe site")->required();
  gdecay->add_option("--distances", gd_distances, "comma-separated distances");
  gdecay->add_option("--radius", gd_radius, "fixed region radius (ssm; default max distance)");
  gdecay->add_option("--samples", gd_samples, "boundary samples when not exhaustive");
  gdecay->add_option("--max-exhaustive", gd_exhaustive);
  add_common(gdecay, gd_c);
  gdecay->callback([&] {
    GraphInput gin = load_graph_spec(gd_graph);
    BoardInput bin = load_board_spec(gd_board);
    LinearOrder order = resolve_order(gin.graph, gd_order);
    Interaction phi = parse_phi_spec(gin.graph, gd_phi, order);
    int probe = bin.board.index_of(gd_probe);
    std::vector<int> distances = parse_int_list(gd_distances, "distance");
    DecayMode mode;
    DecayGeometry geometry;
    if (gd_mode == "wsm") {
      mode = DecayMode::WSM;
      geometry = nested_ball_geometry(bin.board, probe, distances);
    } else if (gd_mode == "ssm") {
      mode = DecayMode::SSM;
      int radius = gd_radius > 0 ? gd_radius
                                 : *std::max_element(distances.begin(), distances.end());
      geometry = fixed_region_geometry(bin.board, probe, radius, distances);
    } else {
      throw std::invalid_argument("mode must be wsm or ssm");
    }
    DecayOptions opts;
    opts.max_exhaustive = gd_exhaustive;
    opts.sample_count = gd_samples;
    opts.seed = gd_c.seed;
    opts.extremes_order = &order;
    DecayReport rep = measure_decay(bin.board, gin.graph, phi, mode, geometry, opts);
    ordered_json report = make_run_report(
        "gibbs decay",
        {{"graph", input_entry(gin.source, gin.hash)}, {"board", input_entry(bin.source, bin.hash)}},
        {{"phi", gd_phi}, {"mode", gd_mode}, {"probe", gd_probe}, {"distances", gd_distances}},
        gd_c.seed);
    report["results"] = decay_json(rep);
    finish(report, gd_c);
  });

  std::string gt_graph, gt_board, gt_variant = "dismantlable", gt_vstar, gt_order = "auto";
  std::string gt_region, gt_boundary, gt_probe;
  double gt_lambda = 10;
  int gt_distance = -1;
  Common gt_c;
  auto* gtail = gibbs->add_subcommand("tailbound", "deviation tail bounds in log space");
  gtail->add_option("--graph", gt_graph)->required();
  gtail->add_option("--board", gt_board)->required();
  gtail->add_option("--variant", gt_variant, "dismantlable | umc");
  gtail->add_option("--lambda", gt_lambda)->required();
  gtail->add_option("--vstar", gt_vstar, "distinguished vertex (dismantlable variant)");
  gtail->add_option("--order", gt_order, "vertex order (umc variant)");
  gtail->add_option("--distance", gt_distance, "UMC distance g (default |H|-2)");
  gtail->add_option("--region", gt_region)->required();
  gtail->add_option("--boundary", gt_boundary)->required();
  gtail->add_option("--probe", gt_probe, "probe sites B (default: whole region)");
  add_common(gtail, gt_c);
  gtail->callback([&] {
    GraphInput gin = load_graph_spec(gt_graph);
    BoardInput bin = load_board_spec(gt_board);
    SpecificationQuery query{parse_site_list(bin.board, gt_region),
                             parse_assignment(bin.board, gin.graph, gt_boundary)};
    SiteSet probe = gt_probe.empty() ? query.region : parse_site_list(bin.board, gt_probe);
    TailBoundReport rep;
    if (gt_variant == "dismantlable") {
      int v_star;
      if (!gt_vstar.empty()) {
        v_star = gin.graph.index_of(gt_vstar);
      } else {
        auto persistent = persistent_vertices(gin.graph);
        if (persistent.vertices.empty())
          throw std::invalid_argument("graph has no persistent vertex; pass --vstar");
        v_star = persistent.vertices.front();
      }
      rep = check_tail_bound_dismantlable(bin.board, gin.graph, v_star, gt_lambda, query, probe);
    } else if (gt_variant == "umc") {
      LinearOrder order = resolve_order(gin.graph, gt_order);
      int g = gt_distance >= 0 ? gt_distance : std::max(0, gin.graph.size() - 2);
      rep = check_tail_bound_umc(bin.board, gin.graph, order, g, gt_lambda, query, probe);
    } else {
      throw std::invalid_argument("variant must be dismantlable or umc");
    }
    ordered_json report = make_run_report(
        "gibbs tailbound",
        {{"graph", input_entry(gin.source, gin.hash)}, {"board", input_entry(bin.source, bin.hash)}},
        {{"variant", gt_variant}, {"lambda", gt_lambda}, {"region", gt_region}}, gt_c.seed);
    report["results"] = tail_bound_json(rep);
    finish(report, gt_c);
    exit_code = rep.holds ? 0 : 1;
  });

  std::string gq_graph, gq_board, gq_phi = "uniform", gq_order = "auto", gq_site;
  long gq_budget = 2'000'000;
  Common gq_c;
  auto* gqpi = gibbs->add_subcommand("qpi", "worst single-site boundary sensitivity");
  gqpi->add_option("--graph", gq_graph)->required();
  gqpi->add_option("--board", gq_board)->required();
  gqpi->add_option("--phi", gq_phi);
  gqpi->add_option("--order", gq_order);
  gqpi->add_option("--site", gq_site)->required();
  gqpi->add_option("--budget", gq_budget);
  add_common(gqpi, gq_c);
  gqpi->callback([&] {
    GraphInput gin = load_graph_spec(gq_graph);
    BoardInput bin = load_board_spec(gq_board);
    LinearOrder order = resolve_order(gin.graph, gq_order);
    Interaction phi = parse_phi_spec(gin.graph, gq_phi, order);
    QofPiReport rep = q_of_pi(bin.board, gin.graph, phi, bin.board.index_of(gq_site), gq_budget);
    ordered_json report = make_run_report(
        "gibbs qpi",
        {{"graph", input_entry(gin.source, gin.hash)}, {"board", input_entry(bin.source, bin.hash)}},
        {{"phi", gq_phi}, {"site", gq_site}}, gq_c.seed);
    report["results"] = qpi_json(rep);
    finish(report, gq_c);
  });

  // ---- spectral ----
  std::string sp_family = "H_q", sp_graph, sp_phi = "uniform", sp_wall, sp_order = "auto";
  int sp_q = 0;
  bool sp_free_wall = false;
  Common sp_c;
  auto* spectral = app.add_subcommand("spectral", "channel chain eigenvalues and decay cap");
  spectral->add_option("--family", sp_family, "graph family (default H_q)");
  spectral->add_option("--q", sp_q, "family parameter");
  spectral->add_option("--graph", sp_graph, "explicit graph file/spec (overrides --family)");
  spectral->add_option("--phi", sp_phi);
  spectral->add_option("--order", sp_order);
  spectral->add_option("--wall", sp_wall, "wall vertex pair u,v (default 0,b for H_q)");
  spectral->add_flag("--free-wall", sp_free_wall, "no wall: chain over all of H");
  add_common(spectral, sp_c);
  spectral->callback([&] {
    GraphInput gin = sp_graph.empty()
                         ? load_graph_spec(sp_q > 0 ? sp_family + ":" + std::to_string(sp_q)
                                                    : sp_family)
                         : load_graph_spec(sp_graph);
    LinearOrder order = resolve_order(gin.graph, sp_order);
    Interaction phi = parse_phi_spec(gin.graph, sp_phi, order);
    std::optional<std::pair<int, int>> wall;
    if (!sp_free_wall) {
      if (!sp_wall.empty()) {
        auto comma = sp_wall.find(',');
        if (comma == std::string::npos)
          throw std::invalid_argument("--wall expects two vertex names u,v");
        wall = std::make_pair(gin.graph.index_of(sp_wall.substr(0, comma)),
                              gin.graph.index_of(sp_wall.substr(comma + 1)));
      } else if (gin.graph.find("0") && gin.graph.find("b")) {
        wall = std::make_pair(gin.graph.index_of("0"), gin.graph.index_of("b"));
      }
    }
    ChannelChain chain = channel_chain(gin.graph, wall, phi);
    SpectralReport rep = eigen_decay(chain);
    ordered_json report = make_run_report(
        "spectral", {{"graph", input_entry(gin.source, gin.hash)}},
        {{"phi", sp_phi}, {"wall", sp_wall.empty() ? (sp_free_wall ? "free" : "auto") : sp_wall}},
        sp_c.seed);
    report["results"] = spectral_json(gin.graph, chain, rep);
    if (sp_q >= 2) report["results"]["ssm_rate_cap"] = ssm_rate_cap(sp_q);
    finish(report, sp_c);
  });

  // ---- reproduce ----
  std::string rp_id;
  int rp_q = 5;
  Common rp_c;
  auto* reproduce = app.add_subcommand("reproduce", "scripted scenario reproductions");
  reproduce->add_option("id", rp_id, "figure-9 | figure-12 | prop-9.1 | prop-9.4")->required();
  reproduce->add_option("--q", rp_q, "parameter for prop-9.4");
  add_common(reproduce, rp_c);
  reproduce->callback([&] {
    ReproduceResult result = run_reproduce(rp_id, rp_q);
    ordered_json report = make_run_report(
        "reproduce", {{"id", rp_id}}, {{"q", rp_q}}, rp_c.seed);
    report["results"] = result.details;
    report["pass"] = result.pass;
    finish(report, rp_c);
    exit_code = result.pass ? 0 : 1;
  });

  // ---- fuzz ----
  int fz_count = 200, fz_max_vertices = 7;
  bool fz_no_panel = false;
  Common fz_c;
  auto* fuzz = app.add_subcommand("fuzz", "random-graph hierarchy regression");
  fuzz->add_option("--count", fz_count);
  fuzz->add_option("--max-vertices", fz_max_vertices);
  fuzz->add_flag("--no-panel", fz_no_panel, "skip the per-board implication panel");
  add_common(fuzz, fz_c);
  fuzz->callback([&] {
    FuzzResult result = hierarchy_fuzz(fz_count, fz_max_vertices, fz_c.seed, !fz_no_panel);
    ordered_json report = make_run_report(
        "fuzz", ordered_json::object(),
        {{"count", fz_count}, {"max_vertices", fz_max_vertices}, {"panel", !fz_no_panel}},
        fz_c.seed);
    report["results"] = result.details;
    finish(report, fz_c);
    exit_code = result.violations == 0 ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::fprintf(stderr, "wall_ms %lld\n", static_cast<long long>(elapsed));
  return exit_code;
}
