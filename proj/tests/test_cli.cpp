#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "homlab/cli_commands.hpp"
#include "homlab/json_io.hpp"

using namespace homlab;
using doctest::Approx;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(HOMLAB_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

json results_of(const RunResult& r) {
  json report = json::parse(r.out);
  return report.at("results");
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("graph and board specs load from families and files") {
  GraphInput fam = load_graph_spec("H_phi");
  CHECK(fam.graph == generate_named("H_phi"));
  CHECK(fam.source == "H_phi");
  // family specs hash the spec string, not a rendered file
  CHECK(fam.hash == content_hash_hex("H_phi"));

  GraphInput sized = load_graph_spec("K_n:4");
  CHECK(sized.graph == generate_named("K_n", 4));

  std::string path = write_temp("cli_graph.txt", to_text(generate_named("counterexample_abcd")));
  GraphInput file = load_graph_spec(path);
  CHECK(file.graph == generate_named("counterexample_abcd"));
  CHECK(file.source == path);
  CHECK_THROWS(load_graph_spec("no_such_family"));

  BoardInput box = load_board_spec("box_Z2:3,3");
  CHECK(box.board.size() == 9);
  CHECK(box.board.interior().size() == 9);
  BoardInput ring = load_board_spec("box_Z2:4,4,ring");
  CHECK(ring.board.size() == 16);
  CHECK(ring.board.interior().size() == 4);
  CHECK(load_board_spec("path_n:5").board.size() == 5);
}

TEST_CASE("vertex orders resolve from the decomposition, declaration, and files") {
  ConstraintGraph h = generate_named("H_phi");
  CHECK(resolve_order(h, "auto").by_rank == std::vector<int>{1, 0});
  CHECK(resolve_order(h, "declaration").by_rank == std::vector<int>{0, 1});

  // no decomposition: auto falls back to declaration order
  ConstraintGraph k5 = generate_named("K_n", 5);
  CHECK(resolve_order(k5, "auto").by_rank == declaration_order(k5).by_rank);

  std::string path = write_temp("cli_order.txt", "1\n0\n");
  CHECK(resolve_order(h, path).by_rank == std::vector<int>{1, 0});
  std::string bad = write_temp("cli_order_bad.txt", "1\nbogus\n");
  CHECK_THROWS(resolve_order(h, bad));
}

TEST_CASE("interaction specs map onto the constructors") {
  ConstraintGraph h = generate_named("H_phi");
  LinearOrder ord = resolve_order(h, "auto");
  CHECK(parse_phi_spec(h, "uniform", ord).vertex(0) == 0.0);
  CHECK(parse_phi_spec(h, "hardcore:0.5", ord).vertex(h.index_of("1")) == Approx(-0.5));
  Interaction prec = parse_phi_spec(h, "prec-lambda:2.0", ord);
  CHECK(prec.vertex(1) == Approx(-std::log(2.0)));
  CHECK(prec.vertex(0) == Approx(-2 * std::log(2.0)));
  CHECK(parse_phi_spec(h, "lambda:0,3.0", ord).vertex(0) == Approx(-std::log(3.0)));

  ConstraintGraph k3 = generate_named("K_n_looped", 3);
  LinearOrder dec3 = declaration_order(k3);
  CHECK(parse_phi_spec(k3, "potts-f:3,0.4", dec3).edge(1, 1) == Approx(-0.4));
  CHECK_THROWS(parse_phi_spec(k3, "potts-f:5,0.4", dec3));  // size mismatch
  CHECK_THROWS(parse_phi_spec(h, "tilt:1", ord));
  CHECK_THROWS(parse_phi_spec(h, "hardcore:", ord));

  std::string path = write_temp("cli_phi.txt", "vertex 1 -0.25\n");
  CHECK(parse_phi_spec(h, "file:" + path, ord).vertex(1) == Approx(-0.25));
}

TEST_CASE("site lists and assignments parse by name") {
  BoardInput box = load_board_spec("box_Z2:3,3");
  CHECK(parse_site_list(box.board, "1_0,0_1") == SiteSet{1, 3});
  CHECK(parse_site_list(box.board, "") == SiteSet{});
  CHECK_THROWS(parse_site_list(box.board, "9_9"));

  ConstraintGraph h = generate_named("H_phi");
  Configuration c = parse_assignment(box.board, h, "1_1=1,0_0=0");
  CHECK(c.value(4) == 1);
  CHECK(c.value(0) == 0);
  CHECK(c.assigned_count() == 2);
  CHECK_THROWS(parse_assignment(box.board, h, "1_1"));
  CHECK_THROWS(parse_assignment(box.board, h, "1_1=7"));
}

TEST_CASE("analyze reports the strongest rung of the ladder") {
  RunResult safe = run_cli("analyze H_phi");
  CHECK(safe.exit_code == 0);
  json r = results_of(safe);
  CHECK(r.at("safe_symbol") == "0");
  CHECK(r.at("decomposable") == true);
  CHECK(r.at("hierarchy_level") == "safe symbol");
  CHECK(r.at("dismantle").at("dismantlable") == true);
  CHECK(r.contains("vertex_order"));

  json abcd = results_of(run_cli("analyze counterexample_abcd"));
  CHECK(abcd.at("safe_symbol").is_null());
  CHECK(abcd.at("decomposable") == false);
  CHECK(abcd.at("hierarchy_level") == "dismantlable");

  json k5 = results_of(run_cli("analyze K_n:5"));
  CHECK(k5.at("hierarchy_level") == "none");
  CHECK(k5.at("dismantle").at("dismantlable") == false);
}

TEST_CASE("structural commands signal their verdict through the exit code") {
  CHECK(run_cli("decompose H_phi").exit_code == 0);
  RunResult no = run_cli("decompose counterexample_abcd");
  CHECK(no.exit_code == 1);
  CHECK(results_of(no).at("decomposable") == false);

  CHECK(run_cli("fold H_q:3").exit_code == 0);
  CHECK(run_cli("fold K_n:5").exit_code == 1);
  CHECK(run_cli("chordal K_n_looped:4").exit_code == 0);
  CHECK(run_cli("chordal H_phi").exit_code == 1);

  json dec = results_of(run_cli("decompose H_phi"));
  CHECK(dec.at("decomposition").at("core") == json::array({"0"}));
}

TEST_CASE("mixing checks exit holds, fails, or unknown") {
  CHECK(run_cli("check ssf H_phi --board box_Z2:3,3").exit_code == 0);

  RunResult ssf = run_cli("check ssf K_n:4 --board box_Z2:3,3");
  CHECK(ssf.exit_code == 1);
  json r = results_of(ssf);
  CHECK(r.at("status") == "fails");
  CHECK(r.contains("ssf_failure"));

  RunResult si = run_cli("check si K_n:2 --board path_n:5 --gap 2");
  CHECK(si.exit_code == 1);
  CHECK(results_of(si).contains("counterexample"));

  // a starved budget cannot certify anything
  RunResult starved = run_cli("check tssm K_n:4 --board box_Z2:4,4 --budget 50");
  CHECK(starved.exit_code == 2);
  CHECK(results_of(starved).at("status") == "unknown");
}

TEST_CASE("bad inputs exit with the error code") {
  CHECK(run_cli("analyze no_such_family").exit_code == 3);
  CHECK(run_cli("check bogus_property H_phi --board path_n:3").exit_code == 3);
  // proper 2-colouring of a path: ends pinned to both colours strand the middle
  CHECK(run_cli("gibbs marginal --graph K_n:2 --board path_n:3 --region 1 "
                "--boundary 0=1,2=2")
            .exit_code == 3);
}

TEST_CASE("unique-maximal checks drive exit codes end to end") {
  RunResult ok = run_cli("umc H_phi --board box_Z2:3,3 --m1-max-shape 1");
  CHECK(ok.exit_code == 0);
  json r = results_of(ok);
  CHECK(r.at("m1_status") == "holds");
  CHECK(r.at("m2").at("status") == "holds");
  CHECK(r.at("h_minus_2") == 0);

  RunResult bad = run_cli("umc K_n:5 --board path_n:2 --order declaration");
  CHECK(bad.exit_code == 1);
  CHECK(results_of(bad).at("m1_status") == "fails");
}

TEST_CASE("scenario reproduction and the fuzz battery pass clean") {
  RunResult rep = run_cli("reproduce figure-9");
  CHECK(rep.exit_code == 0);
  json report = json::parse(rep.out);
  CHECK(report.at("pass") == true);
  CHECK(report.at("results").at("rows").size() > 0);

  RunResult fz = run_cli("fuzz --count 40 --seed 5");
  CHECK(fz.exit_code == 0);
  json r = results_of(fz);
  // the sweep covers the builtin catalogue plus the requested random graphs
  int catalogue = (int)builtin_graph_catalogue().size();
  CHECK(r.at("graphs_tested") == catalogue + 40);
  CHECK(r.at("violations") == 0);
}

TEST_CASE("gibbs and spectral numbers survive the JSON pipe") {
  RunResult marg = run_cli(
      "gibbs marginal --graph H_phi --board box_Z2:3,3 --phi hardcore:0.6931471805599453 "
      "--region 1_1 --boundary 1_0=0,0_1=0,2_1=0,1_2=0");
  CHECK(marg.exit_code == 0);
  json r = results_of(marg);
  CHECK(r.at("log_partition").get<double>() == Approx(std::log(3.0)).epsilon(1e-12));
  REQUIRE(r.at("cells").size() == 2);
  CHECK(r.at("cells")[0].at("values") == "0");
  CHECK(r.at("cells")[0].at("probability").get<double>() == Approx(1.0 / 3).epsilon(1e-12));
  CHECK(r.at("cells")[1].at("probability").get<double>() == Approx(2.0 / 3).epsilon(1e-12));

  RunResult spec = run_cli("spectral --q 5");
  CHECK(spec.exit_code == 0);
  json s = results_of(spec);
  CHECK(s.at("lambda_star").get<double>() == Approx(0.25).epsilon(1e-9));
  CHECK(s.at("ssm_rate_cap").get<double>() == Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(s.at("states").size() == 5);

  RunResult adm = run_cli("check admissible K_n:2 --board path_n:3 --assign 0=1,2=2 --radius 1");
  CHECK(adm.exit_code == 0);
  json a = results_of(adm);
  CHECK(a.at("verdict").get<std::string>().find("inadmissible") == 0);
}

TEST_CASE("reports are byte-identical across repeated runs") {
  for (const std::string& args :
       {std::string("analyze K_n:3"), std::string("umc S_n_center_loop:2 --board box_Z2:3,3"),
        std::string("fuzz --count 10 --seed 9"),
        std::string("gibbs decay --graph H_phi --board box_Z2:5,5 --probe 2_2 "
                    "--distances 1,2 --seed 4")}) {
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}
